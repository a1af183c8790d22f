#pragma once

// On-disk formats. All multi-byte integers are little-endian.
//
// Sequence file: ASCII '0'/'1' with no separators, or with packing, the
// bits MSB-first 8 per byte with the last byte zero-padded and no header.
//
// PPM code file:
//   magic    8 bytes  "PPMCODE1"
//   mode     1 byte   0 = bounded, 1 = star
//   k        u16      context bound (0 for star)
//   length   u64      number of source bits
//   padding  1 byte   unused low bits in the final payload byte (0..7)
//   payload  code bits, MSB-first
//
// LZ78 code file:
//   magic    8 bytes  "LZ78CODE"
//   flags    1 byte   bit0 = final phrase complete, bit1 = gamma pointers
//   phrases  u64      phrase count
//   padding  1 byte   as above
//   payload  code bits, MSB-first

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "ppmlab/arith_coder.hpp"
#include "ppmlab/bitstring.hpp"
#include "ppmlab/lz78.hpp"
#include "ppmlab/ppm_model.hpp"

namespace ppmlab::formats {

inline constexpr std::string_view kPpmMagic = "PPMCODE1";
inline constexpr std::string_view kLzMagic = "LZ78CODE";

void write_sequence(std::ostream& out, const BitString& bits, bool packed);
/// Reads a text sequence (whitespace ignored) or a packed one; with
/// packing, `packed_bits` limits how many bits are taken (default: all).
BitString read_sequence(std::istream& in, bool packed, std::uint64_t packed_bits = UINT64_MAX);

struct PpmFile {
  ModelConfig config;
  CodeOutput code;
};

void write_ppm(std::ostream& out, const PpmFile& file);
PpmFile read_ppm(std::istream& in);

void write_lz(std::ostream& out, const LzCode& code);
LzCode read_lz(std::istream& in);

/// Which code format the stream holds, from its magic; the stream position
/// is restored.
enum class CodeKind { ppm, lz78, unknown };
CodeKind sniff(std::istream& in);

}  // namespace ppmlab::formats
