#pragma once

// The sequence S = S_1 S_2 S_3 ... where S_n lists every word of length n
// exactly once in aligned blocks, built from repeated cyclic shifts of db(n).

#include <cstdint>
#include <optional>
#include <vector>

#include "ppmlab/bitstring.hpp"
#include "ppmlab/debruijn.hpp"

namespace ppmlab {

/// Factorisation n = 2^s * t (t odd) and the resulting block layout of S_n.
struct ZoneSpec {
  unsigned n = 0;
  unsigned s = 0;
  std::uint64_t t = 0;
  std::uint64_t block_count = 0;   // 2^s
  std::uint64_t block_length = 0;  // t * 2^n

  static ZoneSpec of(unsigned n);
  std::uint64_t zone_length() const { return block_count * block_length; }
};

/// |S_n| = n * 2^n.
std::uint64_t zone_length(unsigned n);
/// Offset of the first bit of S_n in S, i.e. |S_1 ... S_{n-1}|.
std::uint64_t zone_start(unsigned n);
/// The zone containing bit `pos` of S.
unsigned zone_of(std::uint64_t pos);

/// S_n = B_{n,0} B_{n,1} ... B_{n,2^s-1} with B_{n,i} = db_i(n)^t.
BitString segment(unsigned n, unsigned max_order = kDefaultMaxOrder);

/// Single-consumer lazy reader over the first `limit_bits` bits of S.
class SequenceStream {
 public:
  explicit SequenceStream(std::uint64_t limit_bits, unsigned max_order = kDefaultMaxOrder);

  std::optional<Bit> next();
  std::uint64_t position() const noexcept { return position_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  unsigned max_order_;
  std::uint64_t position_ = 0;
  unsigned zone_ = 0;
  BitString current_;
  std::uint64_t offset_ = 0;
};

/// S restricted to its first `limit_bits` bits.
BitString sequence_prefix(std::uint64_t limit_bits, unsigned max_order = kDefaultMaxOrder);

/// S_1 ... S_{n_max} with the offset at which each zone begins.
struct SequencePrefix {
  BitString data;
  std::vector<std::uint64_t> zone_starts;  // zone_starts[n-1] = start of S_n

  std::uint64_t boundary(unsigned n) const { return zone_starts.at(n - 1); }
};
SequencePrefix sequence_through(unsigned n_max, unsigned max_order = kDefaultMaxOrder);

/// Overlapping occurrences of w in x. Throws std::domain_error for empty w.
std::uint64_t occ(const BitString& w, const BitString& x);

/// Occurrences of w at block-aligned positions i = 0 (mod |w|), counting
/// only complete windows. Throws std::domain_error for empty w.
std::uint64_t occ_block(const BitString& w, const BitString& x);

/// True iff occ_block(w, S_n) = 1 for every w of length n.
bool check_enumeration(unsigned n, unsigned max_order = kDefaultMaxOrder);

struct WordFrequency {
  BitString word;
  std::uint64_t count = 0;
  double frequency = 0.0;
};

/// occ(w, prefix)/|prefix| for every w with 1 <= |w| <= max_word_len,
/// ordered by length then lexicographically.
std::vector<WordFrequency> normality_stats(const BitString& prefix, unsigned max_word_len);

}  // namespace ppmlab
