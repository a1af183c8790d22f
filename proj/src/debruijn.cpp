#include "ppmlab/debruijn.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "ppmlab/kernels.hpp"

namespace ppmlab {

DeBruijnString martin_db(unsigned n, unsigned max_order) {
  if (n == 0) throw std::domain_error("de Bruijn order must be positive");
  if (n > max_order || n > kernels::kMaxWindowWidth) {
    throw ResourceLimit("de Bruijn order " + std::to_string(n) + " exceeds budget of " + std::to_string(max_order));
  }
  const std::uint64_t length = std::uint64_t{1} << n;
  const std::uint64_t mask = length - 1;

  // x starts as 1^{n-1}; `window` holds its last n-1 bits.
  std::vector<Bit> x(n - 1, 1);
  x.reserve(length + n - 1);
  std::vector<bool> seen(length, false);
  std::uint64_t window = mask >> 1;

  for (;;) {
    const std::uint64_t with_zero = (window << 1) & mask;
    const std::uint64_t with_one = with_zero | 1u;
    if (!seen[with_zero]) {
      seen[with_zero] = true;
      window = with_zero;
      x.push_back(0);
    } else if (!seen[with_one]) {
      seen[with_one] = true;
      window = with_one;
      x.push_back(1);
    } else {
      break;
    }
  }
  if (x.size() != length + n - 1) throw std::logic_error("Martin construction halted early");

  DeBruijnString out;
  out.order = n;
  out.data = BitString(std::vector<Bit>(x.begin() + (n - 1), x.end()));
  return out;
}

DeBruijnString shift(const DeBruijnString& db, std::uint64_t i) {
  const std::uint64_t length = db.data.size();
  if (i >= length) throw std::out_of_range("shift must satisfy 0 <= i < 2^n");
  std::vector<Bit> rotated;
  rotated.reserve(length);
  const auto& bits = db.data.bits();
  rotated.insert(rotated.end(), bits.begin() + static_cast<std::ptrdiff_t>(i), bits.end());
  rotated.insert(rotated.end(), bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(i));
  return DeBruijnString{db.order, (db.shift + i) % length, BitString(std::move(rotated))};
}

bool verify_db(const BitString& x, unsigned n) {
  if (n == 0 || n > kernels::kMaxWindowWidth || x.size() != (std::uint64_t{1} << n)) {
    throw std::domain_error("verify_db requires |x| = 2^n");
  }
  const auto counts = kernels::parallel::window_histogram(x.view(), n, /*cyclic=*/true);
  return kernels::all_equal(counts, 1);
}

}  // namespace ppmlab
