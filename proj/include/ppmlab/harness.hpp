#pragma once

// Experiment drivers behind the CLI: ratio curves over prefixes of S,
// per-zone cost accounting against the closed-form bounds, checks on the
// contexts the star model has built at zone checkpoints, and the named
// verification suites.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppmlab/lz78.hpp"
#include "ppmlab/ppm_model.hpp"

namespace ppmlab::harness {

enum class Algo { ppm_star, ppm_k, lz78 };

std::string_view algo_name(Algo a);
std::optional<Algo> parse_algo(std::string_view name);

struct RunSpec {
  Algo algo = Algo::ppm_star;
  unsigned k = 0;  // ppm_k only
  PointerCode pointer = PointerCode::fixed;  // lz78 only

  static RunSpec star() { return {Algo::ppm_star, 0, PointerCode::fixed}; }
  static RunSpec bounded(unsigned k) { return {Algo::ppm_k, k, PointerCode::fixed}; }
  static RunSpec lz(PointerCode p = PointerCode::fixed) { return {Algo::lz78, 0, p}; }
  ModelConfig model() const;
};

struct RatioRecord {
  std::uint64_t prefix_len = 0;
  unsigned zone = 0;
  Algo algo = Algo::ppm_star;
  std::optional<unsigned> k;
  std::uint64_t output_bits = 0;
  double ratio = 0.0;
};

/// End of every zone S_1..S_{n_max} and of every bad zone (first 2^n + 2n
/// bits of S_n), ascending.
std::vector<std::uint64_t> default_sample_points(unsigned n_max);

struct CurveOptions {
  std::vector<std::uint64_t> points;  // prefix lengths; 0 is skipped
  /// Without this, PPM rows at prefixes up to exact_budget report the exact
  /// coder length (checked against the ideal length) instead of
  /// ceil(sum -log2 p).
  bool ideal_only = false;
  std::uint64_t exact_budget = std::uint64_t{1} << 14;
};

/// One row per (run, point). Runs execute concurrently; rows come back
/// ordered by (algo, k, prefix_len).
std::vector<RatioRecord> ratio_curve(const std::vector<RunSpec>& runs, const CurveOptions& options);
std::string to_csv(const std::vector<RatioRecord>& rows);

/// (2^n + 2n + n^2) log2(n^5) + n log2(n-1) + 2^{n+1} log2 n.
double zone_cost_bound(unsigned n);
/// (2^n + 2n) log2(n^5).
double bad_zone_bound(unsigned n);

struct ZoneCost {
  unsigned n = 0;
  double zone_bits = 0.0;      // sum of -log2 p over S_n
  double bad_zone_bits = 0.0;  // the same over the first 2^n + 2n bits of S_n
};
/// PPM* ideal cost of each zone 1..n_max in a single pass over S.
std::vector<ZoneCost> star_zone_costs(unsigned n_max);

struct BoundRecord {
  unsigned n = 0;
  double measured_bits = 0.0;
  double bound_bits = 0.0;
  bool holds() const { return measured_bits <= bound_bits; }
};
std::vector<BoundRecord> zone_bound_records(const std::vector<ZoneCost>& costs, unsigned n_lo);
std::vector<BoundRecord> bad_zone_records(const std::vector<ZoneCost>& costs, unsigned n_lo);

struct CheckRecord {
  unsigned n = 0;
  bool holds = false;
  std::string detail;
};
/// Star model after S_1..S_{n-1} and the first 2^n + n bits of S_n holds a
/// context for every word of length n; n in [n_lo, n_hi].
std::vector<CheckRecord> context_building_check(unsigned n_lo, unsigned n_hi);
/// For odd n in [n_lo, n_hi]: after the bad zone of S_n the star model holds
/// 0 1 0^{n-2} 1 as a deterministic context predicting 1.
std::vector<CheckRecord> deterministic_context_check(unsigned n_lo, unsigned n_hi);

template <typename Record, typename Pred>
std::optional<unsigned> first_holding(const std::vector<Record>& rows, Pred holds) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool rest = true;
    for (std::size_t j = i; j < rows.size() && rest; ++j) rest = holds(rows[j]);
    if (rest) return rows[i].n;
  }
  return std::nullopt;
}

/// Reference model states for the input 0100110110 in the TSV rendering.
std::string_view reference_bounded3_tsv();
std::string_view reference_star_tsv();

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;
  double seconds = 0.0;
};

std::vector<std::string> suite_names();
/// Runs one suite ("all" runs every suite in turn and merges the lines).
/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const std::function<void(const std::string&)>& progress = {});

}  // namespace ppmlab::harness
