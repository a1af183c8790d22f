#include "ppmlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ppmlab/kernels.hpp"

namespace ppmlab {

ZoneSpec ZoneSpec::of(unsigned n) {
  if (n == 0) throw std::domain_error("zones are numbered from 1");
  ZoneSpec z;
  z.n = n;
  z.t = n;
  while (z.t % 2 == 0) {
    z.t /= 2;
    ++z.s;
  }
  z.block_count = std::uint64_t{1} << z.s;
  z.block_length = z.t << n;
  return z;
}

std::uint64_t zone_length(unsigned n) { return static_cast<std::uint64_t>(n) << n; }

std::uint64_t zone_start(unsigned n) {
  if (n == 0) throw std::domain_error("zones are numbered from 1");
  // sum_{j<n} j 2^j = (n-2) 2^n + 2
  return (static_cast<std::uint64_t>(n) << n) - (std::uint64_t{2} << n) + 2;
}

unsigned zone_of(std::uint64_t pos) {
  unsigned n = 1;
  while (zone_start(n + 1) <= pos) ++n;
  return n;
}

BitString segment(unsigned n, unsigned max_order) {
  const ZoneSpec z = ZoneSpec::of(n);
  const DeBruijnString db = martin_db(n, max_order);
  std::vector<Bit> out;
  out.reserve(z.zone_length());
  for (std::uint64_t i = 0; i < z.block_count; ++i) {
    const DeBruijnString rotated = shift(db, i);
    for (std::uint64_t r = 0; r < z.t; ++r) out.insert(out.end(), rotated.data.begin(), rotated.data.end());
  }
  return BitString(std::move(out));
}

SequenceStream::SequenceStream(std::uint64_t limit_bits, unsigned max_order)
    : limit_(limit_bits), max_order_(max_order) {}

std::optional<Bit> SequenceStream::next() {
  if (position_ >= limit_) return std::nullopt;
  if (offset_ == current_.size()) {
    ++zone_;
    current_ = segment(zone_, max_order_);
    offset_ = 0;
  }
  ++position_;
  return current_[offset_++];
}

BitString sequence_prefix(std::uint64_t limit_bits, unsigned max_order) {
  std::vector<Bit> out;
  out.reserve(limit_bits);
  for (unsigned n = 1; out.size() < limit_bits; ++n) {
    const BitString zone = segment(n, max_order);
    const std::uint64_t take = std::min<std::uint64_t>(zone.size(), limit_bits - out.size());
    out.insert(out.end(), zone.begin(), zone.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return BitString(std::move(out));
}

SequencePrefix sequence_through(unsigned n_max, unsigned max_order) {
  if (n_max > max_order) {
    throw ResourceLimit("zone " + std::to_string(n_max) + " exceeds the maximum order " + std::to_string(max_order));
  }
  SequencePrefix p;
  if (n_max > 0) p.data.reserve(zone_start(n_max + 1));
  for (unsigned n = 1; n <= n_max; ++n) {
    p.zone_starts.push_back(p.data.size());
    p.data.append(segment(n, max_order));
  }
  return p;
}

std::uint64_t occ(const BitString& w, const BitString& x) {
  if (w.empty()) throw std::domain_error("occ requires a non-empty word");
  return kernels::parallel::count_occurrences(w.view(), x.view());
}

std::uint64_t occ_block(const BitString& w, const BitString& x) {
  if (w.empty()) throw std::domain_error("occ_block requires a non-empty word");
  const std::size_t m = w.size();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + m <= x.size(); i += m) {
    if (std::equal(w.begin(), w.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) ++total;
  }
  return total;
}

bool check_enumeration(unsigned n, unsigned max_order) {
  const BitString zone = segment(n, max_order);
  const auto counts = kernels::parallel::block_histogram(zone.view(), n);
  return kernels::all_equal(counts, 1);
}

std::vector<WordFrequency> normality_stats(const BitString& prefix, unsigned max_word_len) {
  if (max_word_len == 0 || prefix.empty() ||
      static_cast<double>(max_word_len) > std::log2(static_cast<double>(prefix.size()))) {
    throw std::domain_error("normality_stats requires 1 <= max_word_len <= log2(|prefix|)");
  }
  std::vector<WordFrequency> out;
  const double denom = static_cast<double>(prefix.size());
  for (unsigned len = 1; len <= max_word_len; ++len) {
    const auto counts = kernels::parallel::window_histogram(prefix.view(), len, /*cyclic=*/false);
    for (std::uint64_t v = 0; v < counts.size(); ++v) {
      std::vector<Bit> word(len);
      for (unsigned d = 0; d < len; ++d) word[d] = (v >> (len - 1 - d)) & 1u;
      out.push_back({BitString(std::move(word)), counts[v], static_cast<double>(counts[v]) / denom});
    }
  }
  return out;
}

}  // namespace ppmlab
