#include "ppmlab/formats.hpp"

#include <array>
#include <cctype>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace ppmlab::formats {

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFFu));
}

template <typename T>
T get_le(std::istream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw CorruptStream("truncated header");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(v);
}

void expect_magic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  in.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (!in || got != magic) throw CorruptStream("bad magic, expected " + std::string(magic));
}

void write_payload(std::ostream& out, const BitString& bits) {
  const auto bytes = pack_bits(bits.view());
  out.put(static_cast<char>((8 - bits.size() % 8) % 8));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BitString read_payload(std::istream& in) {
  const int pad = in.get();
  if (pad == std::char_traits<char>::eof() || pad > 7) throw CorruptStream("bad padding byte");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.empty() && pad != 0) throw CorruptStream("padding without payload");
  return unpack_bits(bytes, bytes.size() * 8 - static_cast<std::size_t>(pad));
}

}  // namespace

void write_sequence(std::ostream& out, const BitString& bits, bool packed) {
  if (packed) {
    const auto bytes = pack_bits(bits.view());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    const std::string text = bits.to_string();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
}

BitString read_sequence(std::istream& in, bool packed, std::uint64_t packed_bits) {
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (packed) {
    const std::uint64_t available = static_cast<std::uint64_t>(bytes.size()) * 8;
    return unpack_bits(bytes, packed_bits == UINT64_MAX ? available : packed_bits);
  }
  BitString out;
  out.reserve(bytes.size());
  for (std::uint8_t c : bytes) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<Bit>(c - '0'));
    } else if (!std::isspace(c)) {
      throw std::invalid_argument("sequence file contains a character other than 0/1");
    }
  }
  return out;
}

void write_ppm(std::ostream& out, const PpmFile& file) {
  out.write(kPpmMagic.data(), static_cast<std::streamsize>(kPpmMagic.size()));
  out.put(static_cast<char>(file.config.mode == Mode::star ? 1 : 0));
  if (file.config.k > std::numeric_limits<std::uint16_t>::max()) throw std::domain_error("k does not fit in 16 bits");
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(file.config.mode == Mode::star ? 0 : file.config.k));
  put_le<std::uint64_t>(out, file.code.declared_length);
  write_payload(out, file.code.bits);
}

PpmFile read_ppm(std::istream& in) {
  expect_magic(in, kPpmMagic);
  const int mode = in.get();
  if (mode != 0 && mode != 1) throw CorruptStream("unknown PPM mode byte");
  PpmFile f;
  const auto k = get_le<std::uint16_t>(in);
  f.config = mode == 1 ? ModelConfig::star() : ModelConfig::bounded(k);
  f.code.declared_length = get_le<std::uint64_t>(in);
  f.code.bits = read_payload(in);
  return f;
}

void write_lz(std::ostream& out, const LzCode& code) {
  out.write(kLzMagic.data(), static_cast<std::streamsize>(kLzMagic.size()));
  std::uint8_t flags = 0;
  if (code.last_complete) flags |= 1u;
  if (code.pointer_code == PointerCode::gamma) flags |= 2u;
  out.put(static_cast<char>(flags));
  put_le<std::uint64_t>(out, code.phrase_count);
  write_payload(out, code.bits);
}

LzCode read_lz(std::istream& in) {
  expect_magic(in, kLzMagic);
  const int flags = in.get();
  if (flags == std::char_traits<char>::eof() || (flags & ~3) != 0) throw CorruptStream("bad LZ78 flags byte");
  LzCode code;
  code.last_complete = (flags & 1) != 0;
  code.pointer_code = (flags & 2) != 0 ? PointerCode::gamma : PointerCode::fixed;
  code.phrase_count = get_le<std::uint64_t>(in);
  code.bits = read_payload(in);
  return code;
}

CodeKind sniff(std::istream& in) {
  const auto start = in.tellg();
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  const bool ok = static_cast<bool>(in);
  in.clear();
  in.seekg(start);
  if (!ok) return CodeKind::unknown;
  const std::string_view got(magic.data(), magic.size());
  if (got == kPpmMagic) return CodeKind::ppm;
  if (got == kLzMagic) return CodeKind::lz78;
  return CodeKind::unknown;
}

}  // namespace ppmlab::formats
