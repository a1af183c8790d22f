#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppmlab {

using Bit = std::uint8_t;

/// Raised when a request would exceed a configured memory budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a code stream cannot be decoded.
class CorruptStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite binary string, one byte per bit (values 0/1).
///
/// Indexing is 0-based. slice(i, j) is the inclusive range x[i..j] and is
/// empty whenever j < i.
class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<Bit> bits) : bits_(bits) {}
  explicit BitString(std::vector<Bit> bits) : bits_(std::move(bits)) {}

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view text);
  /// n copies of the same bit.
  static BitString repeat(Bit b, std::size_t n) { return BitString(std::vector<Bit>(n, b)); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  Bit operator[](std::size_t i) const { return bits_[i]; }
  Bit at(std::size_t i) const { return bits_.at(i); }

  void push_back(Bit b) { bits_.push_back(b & 1u); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
  void reserve(std::size_t n) { bits_.reserve(n); }

  /// x[i..j] inclusive; empty when j < i.
  BitString slice(std::size_t i, std::ptrdiff_t j) const;
  BitString prefix(std::size_t n) const;
  BitString suffix(std::size_t n) const;
  /// The string concatenated with itself `times` times.
  BitString power(std::size_t times) const;

  std::span<const Bit> view() const noexcept { return bits_; }
  const std::vector<Bit>& bits() const noexcept { return bits_; }
  std::string to_string() const;

  auto begin() const noexcept { return bits_.begin(); }
  auto end() const noexcept { return bits_.end(); }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) = default;

 private:
  std::vector<Bit> bits_;
};

BitString operator+(const BitString& a, const BitString& b);

/// Packs bits MSB-first into bytes; the final byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits);
/// Inverse of pack_bits; reads exactly `bit_count` bits.
BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

}  // namespace ppmlab
