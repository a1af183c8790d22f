#pragma once

// Data-parallel scanning kernels behind the de Bruijn, enumeration and
// counting checks. Every kernel has a serial reference in `serial` with the
// same contract; the OpenMP versions in `parallel` are what the library
// calls. Tests assert the two agree; bench/ compares their speed.

#include <cstdint>
#include <span>
#include <vector>

#include "ppmlab/bitstring.hpp"

namespace ppmlab::kernels {

/// Largest window width the histogram kernels accept (table of 2^width).
inline constexpr unsigned kMaxWindowWidth = 26;

namespace serial {

/// counts[v] = number of positions whose `width`-bit window reads v
/// (MSB = first bit). With `cyclic`, windows wrap around the end, giving
/// exactly bits.size() windows.
std::vector<std::uint32_t> window_histogram(std::span<const Bit> bits, unsigned width, bool cyclic);

/// counts[v] for the aligned blocks bits[i*width .. i*width+width-1];
/// a trailing partial block is ignored.
std::vector<std::uint32_t> block_histogram(std::span<const Bit> bits, unsigned width);

/// Number of (possibly overlapping) occurrences of `pattern` in `text`.
std::uint64_t count_occurrences(std::span<const Bit> pattern, std::span<const Bit> text);

}  // namespace serial

namespace parallel {

std::vector<std::uint32_t> window_histogram(std::span<const Bit> bits, unsigned width, bool cyclic);
std::vector<std::uint32_t> block_histogram(std::span<const Bit> bits, unsigned width);
std::uint64_t count_occurrences(std::span<const Bit> pattern, std::span<const Bit> text);

}  // namespace parallel

/// True iff every entry equals `expected`.
bool all_equal(std::span<const std::uint32_t> counts, std::uint32_t expected);

}  // namespace ppmlab::kernels
