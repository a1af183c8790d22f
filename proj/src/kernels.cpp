#include "ppmlab/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include <omp.h>

namespace ppmlab::kernels {

namespace {

void check_width(unsigned width) {
  if (width == 0 || width > kMaxWindowWidth) throw std::domain_error("window width out of range");
}

// Window starting at `start`, wrapping past the end when needed.
inline std::uint32_t window_at(std::span<const Bit> bits, std::size_t start, unsigned width) {
  const std::size_t n = bits.size();
  std::uint32_t v = 0;
  for (unsigned d = 0; d < width; ++d) v = (v << 1) | bits[(start + d) % n];
  return v;
}

inline std::size_t window_count(std::size_t n, unsigned width, bool cyclic) {
  if (cyclic) return n;
  return n >= width ? n - width + 1 : 0;
}

}  // namespace

namespace serial {

std::vector<std::uint32_t> window_histogram(std::span<const Bit> bits, unsigned width, bool cyclic) {
  check_width(width);
  std::vector<std::uint32_t> counts(std::size_t{1} << width, 0);
  const std::size_t windows = window_count(bits.size(), width, cyclic);
  if (windows == 0) return counts;
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << width) - 1);
  std::uint32_t v = window_at(bits, 0, width);
  ++counts[v];
  for (std::size_t i = 1; i < windows; ++i) {
    v = ((v << 1) | bits[(i + width - 1) % bits.size()]) & mask;
    ++counts[v];
  }
  return counts;
}

std::vector<std::uint32_t> block_histogram(std::span<const Bit> bits, unsigned width) {
  check_width(width);
  std::vector<std::uint32_t> counts(std::size_t{1} << width, 0);
  const std::size_t blocks = bits.size() / width;
  for (std::size_t b = 0; b < blocks; ++b) ++counts[window_at(bits, b * width, width)];
  return counts;
}

std::uint64_t count_occurrences(std::span<const Bit> pattern, std::span<const Bit> text) {
  if (pattern.empty() || pattern.size() > text.size()) return 0;
  std::uint64_t total = 0;
  const std::size_t last = text.size() - pattern.size();
  for (std::size_t i = 0; i <= last; ++i) {
    if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) ++total;
  }
  return total;
}

}  // namespace serial

namespace parallel {

std::vector<std::uint32_t> window_histogram(std::span<const Bit> bits, unsigned width, bool cyclic) {
  check_width(width);
  std::vector<std::uint32_t> counts(std::size_t{1} << width, 0);
  const auto windows = static_cast<std::int64_t>(window_count(bits.size(), width, cyclic));
  if (windows == 0) return counts;
  const std::size_t n = bits.size();
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << width) - 1);
  std::uint32_t* out = counts.data();
  // Each thread rolls a window over its own contiguous range of starts.
#pragma omp parallel
  {
    const int threads = omp_get_num_threads();
    const std::int64_t span_len = (windows + threads - 1) / threads;
    const std::int64_t lo = omp_get_thread_num() * span_len;
    const std::int64_t hi = std::min<std::int64_t>(windows, lo + span_len);
    if (lo < hi) {
      std::uint32_t v = window_at(bits, static_cast<std::size_t>(lo), width);
      std::size_t next = static_cast<std::size_t>(lo) + width;
      for (std::int64_t i = lo;;) {
        if (threads == 1) {
          ++out[v];
        } else {
#pragma omp atomic update
          ++out[v];
        }
        if (++i == hi) break;
        if (next >= n) next -= n;
        v = ((v << 1) | bits[next++]) & mask;
      }
    }
  }
  return counts;
}

std::vector<std::uint32_t> block_histogram(std::span<const Bit> bits, unsigned width) {
  check_width(width);
  std::vector<std::uint32_t> counts(std::size_t{1} << width, 0);
  const auto blocks = static_cast<std::int64_t>(bits.size() / width);
  std::uint32_t* out = counts.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint32_t v = window_at(bits, static_cast<std::size_t>(b) * width, width);
#pragma omp atomic update
    ++out[v];
  }
  return counts;
}

std::uint64_t count_occurrences(std::span<const Bit> pattern, std::span<const Bit> text) {
  if (pattern.empty() || pattern.size() > text.size()) return 0;
  const auto last = static_cast<std::int64_t>(text.size() - pattern.size());
  std::uint64_t total = 0;
  if (pattern.size() <= 64) {
    // Rolling 64-bit window compare.
    const std::size_t m = pattern.size();
    const std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    std::uint64_t target = 0;
    for (Bit b : pattern) target = (target << 1) | b;
#pragma omp parallel reduction(+ : total)
    {
      const int threads = omp_get_num_threads();
      const int tid = omp_get_thread_num();
      const std::int64_t span_len = (last + 1 + threads - 1) / threads;
      const std::int64_t lo = tid * span_len;
      const std::int64_t hi = std::min<std::int64_t>(last + 1, lo + span_len);
      if (lo < hi) {
        std::uint64_t v = 0;
        for (std::size_t d = 0; d + 1 < m; ++d) v = (v << 1) | text[static_cast<std::size_t>(lo) + d];
        for (std::int64_t i = lo; i < hi; ++i) {
          v = ((v << 1) | text[static_cast<std::size_t>(i) + m - 1]) & mask;
          if (v == target) ++total;
        }
      }
    }
    return total;
  }
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t i = 0; i <= last; ++i) {
    if (std::equal(pattern.begin(), pattern.end(), text.begin() + i)) ++total;
  }
  return total;
}

}  // namespace parallel

bool all_equal(std::span<const std::uint32_t> counts, std::uint32_t expected) {
  return std::all_of(counts.begin(), counts.end(), [&](std::uint32_t c) { return c == expected; });
}

}  // namespace ppmlab::kernels
