#include "ppmlab/bitstring.hpp"

namespace ppmlab {

BitString BitString::from_string(std::string_view text) {
  std::vector<Bit> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<Bit>(c - '0'));
    } else {
      throw std::invalid_argument(std::string("not a binary digit: '") + c + "'");
    }
  }
  return BitString(std::move(bits));
}

BitString BitString::slice(std::size_t i, std::ptrdiff_t j) const {
  if (j < 0 || static_cast<std::size_t>(j) < i) return {};
  if (static_cast<std::size_t>(j) >= bits_.size()) throw std::out_of_range("BitString::slice");
  return BitString(std::vector<Bit>(bits_.begin() + static_cast<std::ptrdiff_t>(i), bits_.begin() + j + 1));
}

BitString BitString::prefix(std::size_t n) const {
  if (n > bits_.size()) throw std::out_of_range("BitString::prefix");
  return BitString(std::vector<Bit>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitString BitString::suffix(std::size_t n) const {
  if (n > bits_.size()) throw std::out_of_range("BitString::suffix");
  return BitString(std::vector<Bit>(bits_.end() - static_cast<std::ptrdiff_t>(n), bits_.end()));
}

BitString BitString::power(std::size_t times) const {
  std::vector<Bit> out;
  out.reserve(bits_.size() * times);
  for (std::size_t r = 0; r < times; ++r) out.insert(out.end(), bits_.begin(), bits_.end());
  return BitString(std::move(out));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

BitString operator+(const BitString& a, const BitString& b) {
  BitString out = a;
  out.append(b);
  return out;
}

std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw CorruptStream("packed payload shorter than declared bit count");
  std::vector<Bit> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return BitString(std::move(bits));
}

}  // namespace ppmlab
