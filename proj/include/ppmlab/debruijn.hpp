#pragma once

#include <cstdint>

#include "ppmlab/bitstring.hpp"

namespace ppmlab {

/// Default ceiling on the de Bruijn order (2^24 bits per string).
inline constexpr unsigned kDefaultMaxOrder = 24;

/// A binary de Bruijn string of order n together with the cyclic left
/// shift that produced it from db(n).
struct DeBruijnString {
  unsigned order = 0;
  std::uint64_t shift = 0;
  BitString data;
};

/// db(n): the lexicographically least de Bruijn string of order n, built by
/// Martin's greedy prefer-zero construction.
///
/// Throws std::domain_error for n == 0 and ResourceLimit for n > max_order.
DeBruijnString martin_db(unsigned n, unsigned max_order = kDefaultMaxOrder);

/// Cyclic left shift of `db` by i bits; the result records the accumulated
/// shift modulo 2^n. Throws std::out_of_range unless 0 <= i < 2^n.
DeBruijnString shift(const DeBruijnString& db, std::uint64_t i);

/// True iff every word of length n occurs exactly once in x viewed
/// cyclically. Throws std::domain_error when |x| != 2^n.
bool verify_db(const BitString& x, unsigned n);

}  // namespace ppmlab
