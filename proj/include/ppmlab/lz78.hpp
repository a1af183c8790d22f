#pragma once

// LZ78 parsing and pointer+bit phrase coding.
//
// Phrase j (1-based) is written as a pointer to its parent phrase followed
// by its final bit. With the fixed pointer code the pointer takes
// ceil(log2 j) bits, since the dictionary then holds j entries (λ and the
// j-1 earlier phrases). The gamma variant writes Elias-gamma(pointer + 1).
// A trailing phrase that repeats an earlier one is written as a pointer
// only, and the header records that the last phrase is incomplete.

#include <cstdint>
#include <vector>

#include "ppmlab/bitstring.hpp"

namespace ppmlab {

enum class PointerCode : std::uint8_t { fixed = 0, gamma = 1 };

/// x_j = x_{parent} b_j; the incomplete tail has no final bit.
struct Phrase {
  std::uint64_t parent = 0;
  Bit last = 0;
  bool complete = true;
};

/// Greedy parse into phrases, with dictionary index 0 reserved for λ.
std::vector<Phrase> parse_phrases(const BitString& x);
/// The phrases as strings.
std::vector<BitString> parse(const BitString& x);

struct LzCode {
  BitString bits;
  std::uint64_t phrase_count = 0;
  bool last_complete = true;
  PointerCode pointer_code = PointerCode::fixed;

  friend bool operator==(const LzCode&, const LzCode&) = default;
};

/// ceil(log2 j) for j >= 1.
unsigned pointer_width(std::uint64_t j);
/// Bits taken by the pointer of phrase j to `target`.
std::uint64_t pointer_bits(PointerCode code, std::uint64_t j, std::uint64_t target);

LzCode encode_lz(const BitString& x, PointerCode code = PointerCode::fixed);
/// Throws CorruptStream on a pointer outside the dictionary or a payload
/// that does not match the phrase count.
BitString decode_lz(const LzCode& code);

/// Streaming length accounting: bits(), at any point, equals
/// |encode_lz(prefix read so far)|.
class LzMeter {
 public:
  explicit LzMeter(PointerCode code = PointerCode::fixed);

  void push(Bit b);
  std::uint64_t bits() const;
  std::uint64_t complete_phrases() const noexcept { return phrases_; }

 private:
  PointerCode code_;
  std::vector<std::uint64_t> trie_;  // 2 slots per dictionary entry, 0 = absent
  std::uint64_t node_ = 0;
  std::uint64_t phrases_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace ppmlab
