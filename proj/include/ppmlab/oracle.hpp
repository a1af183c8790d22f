#pragma once

// Brute-force reference implementations used to certify the fast paths.
// Nothing here calls into the kernels, the suffix automaton, or the
// sequence/de Bruijn generators; the only shared pieces are the plain data
// types (BitString, ModelConfig) and, in the comparison drivers, the object
// under test itself.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppmlab/bitstring.hpp"
#include "ppmlab/ppm_model.hpp"

namespace ppmlab::oracle {

/// Window-by-window occurrence count.
std::uint64_t naive_occ(const BitString& w, const BitString& x);

/// Every de Bruijn string of order n (n <= 5) by exhaustive backtracking
/// over {0,1}^{2^n}, in lexicographic order.
std::vector<BitString> all_de_bruijn(unsigned n);
/// True iff the least entry of all_de_bruijn(n) equals `candidate`.
bool exhaustive_db_check(unsigned n, const BitString& candidate);
/// Least de Bruijn string by concatenating Lyndon words (FKM).
BitString fkm_db(unsigned n);

struct Counts {
  std::uint64_t zero = 0;
  std::uint64_t one = 0;
  friend bool operator==(const Counts&, const Counts&) = default;
};

/// A stored context as (context, counts); contexts are '0'/'1' strings.
using ContextRow = std::pair<std::string, Counts>;

/// One chain step: context ("-1" for order -1), event ('0','1','$'),
/// probability num/den unreduced.
struct Step {
  std::string context;
  char event = '0';
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Literal replay of the PPM update rules with a string-keyed table and
/// naive substring counting. Quadratic or worse; meant for short inputs.
class RuleModel {
 public:
  explicit RuleModel(ModelConfig config) : config_(config) {}

  void update(Bit y);
  const std::string& history() const noexcept { return h_; }
  /// Stored suffixes of the history, longest first.
  std::vector<ContextRow> relevant() const;
  std::vector<Step> emit(Bit y) const;
  /// Rows ordered by length descending, then lexicographically.
  std::vector<ContextRow> snapshot() const;
  const std::map<std::string, Counts>& table() const noexcept { return table_; }

 private:
  void create(const std::string& u, const std::string& text);

  ModelConfig config_;
  std::string h_;
  std::map<std::string, Counts> table_;
  std::size_t longest_ = 0;
};

RuleModel rebuild_model(ModelConfig config, const BitString& prefix);

/// Relevant contexts and chains from common-suffix lengths: for every
/// earlier end position, how far it agrees backwards with the current end.
/// O(|history|) per bit.
class SuffixProfileOracle {
 public:
  explicit SuffixProfileOracle(ModelConfig config) : config_(config) {}

  void push(Bit b);
  /// (length, counts) longest first.
  std::vector<std::pair<std::size_t, Counts>> relevant() const;
  std::vector<Step> emit(Bit y) const;

 private:
  ModelConfig config_;
  std::string x_;
  std::vector<std::uint32_t> match_;  // match_[i]: common suffix of x[0..i] and x
  std::vector<std::uint32_t> prev_match_;  // the same against x minus its last bit
};

/// A stored context identified by where it first ends and its length.
struct ContextTuple {
  std::uint64_t first_end = 0;
  std::uint64_t length = 0;
  Counts counts;
  friend auto operator<=>(const ContextTuple& a, const ContextTuple& b) {
    if (auto c = a.first_end <=> b.first_end; c != 0) return c;
    return a.length <=> b.length;
  }
  friend bool operator==(const ContextTuple&, const ContextTuple&) = default;
};

/// Every stored context after reading `x`, derived in O(|x|^2) from
/// common-suffix columns. The empty context is (0, 0).
std::vector<ContextTuple> context_table(ModelConfig config, const BitString& x);

struct DivergenceReport {
  std::optional<std::uint64_t> position;  // history length at first disagreement
  std::string expected;
  std::string actual;

  bool empty() const noexcept { return !position.has_value(); }
  std::string describe() const;
};

/// Rule replay vs ContextModel: full table and next chain at every prefix.
DivergenceReport compare_every_prefix(ModelConfig config, const BitString& input);
/// Suffix-profile oracle vs ContextModel: relevant contexts and next chain
/// at every prefix. With full_state_every > 0 the whole context table is
/// also rebuilt with context_table and compared at every multiple of it and
/// at the end.
DivergenceReport compare_relevant_every_prefix(ModelConfig config, const BitString& input,
                                               std::size_t full_state_every = 0);
/// context_table vs ContextModel::for_each_context after the whole input.
DivergenceReport compare_final_contexts(ModelConfig config, const BitString& input);

/// Conversions used by the drivers and tests.
std::vector<ContextRow> rows_of(const ModelSnapshot& snap);
std::vector<Step> steps_of(const ContextModel& model, const EmissionChain& chain);
std::string render(const std::vector<ContextRow>& rows);
std::string render(const std::vector<Step>& steps);

}  // namespace ppmlab::oracle
