#pragma once

// Adaptive binary PPM context model with Method C escapes, in two flavours:
//
//   * Bounded(k): contexts are all strings of length <= k that have been
//     followed by some bit. Coding starts in the longest relevant context.
//   * Star: a context wb exists once w has occurred at least twice and wb
//     has been followed by some bit. Coding starts in the shortest
//     deterministic relevant context, else the longest relevant one.
//
// In both flavours the count of bit c in context u equals occ(uc, history),
// and the relevant contexts (stored suffixes of the history) are exactly the
// suffixes of length 0..L where L is the length of the longest suffix that
// occurs at least twice. The model therefore keeps an online suffix
// automaton of the history with endpos sizes: each automaton state is a
// class of substrings that share their occurrence set, hence their counts.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppmlab/bitstring.hpp"

namespace ppmlab {

enum class Mode : std::uint8_t { bounded = 0, star = 1 };

struct ModelConfig {
  Mode mode = Mode::star;
  unsigned k = 0;  // bound on context length; ignored in star mode

  static ModelConfig bounded(unsigned k) { return {Mode::bounded, k}; }
  static ModelConfig star() { return {Mode::star, 0}; }
  std::string name() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

enum class Event : std::uint8_t { zero = 0, one = 1, escape = 2 };

inline Event symbol_event(Bit b) { return b ? Event::one : Event::zero; }

/// Exact probability num/den with small integer parts.
struct Probability {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Probability reduced() const;
  double bits() const;  // -log2(num/den)
  std::string to_string() const;  // reduced "num/den"

  friend bool operator==(const Probability& a, const Probability& b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// Per-context symbol counts. Method C gives escape a count equal to the
/// number of distinct predicted symbols.
struct SymbolCounts {
  std::uint64_t zero = 0;
  std::uint64_t one = 0;

  std::uint64_t of(Bit b) const { return b ? one : zero; }
  std::uint64_t distinct() const { return (zero > 0 ? 1u : 0u) + (one > 0 ? 1u : 0u); }
  std::uint64_t escape_count() const { return distinct(); }
  std::uint64_t total() const { return zero + one + distinct(); }
  bool deterministic() const { return distinct() == 1; }

  friend bool operator==(const SymbolCounts&, const SymbolCounts&) = default;
};

/// Cumulative slot of one event inside a coding stage: [low, high) / total.
struct EventRange {
  std::uint64_t low = 0;
  std::uint64_t high = 0;
  std::uint64_t total = 1;

  Probability probability() const { return {high - low, total}; }
};

/// Event distribution of one coding stage. Events are laid out 0, 1, escape
/// in that order. The order -1 stage has no context and no escape.
struct Distribution {
  std::optional<std::size_t> context_length;  // nullopt: order -1
  std::uint64_t zero = 1;
  std::uint64_t one = 1;
  std::uint64_t escape = 0;

  std::uint64_t total() const { return zero + one + escape; }
  bool predicts(Bit b) const { return (b ? one : zero) > 0; }
  EventRange range(Event e) const;
};

/// One step of an emission chain.
struct Emission {
  std::optional<std::size_t> context_length;  // suffix length of history; nullopt: order -1
  Event event = Event::zero;
  EventRange range;

  Probability probability() const { return range.probability(); }
};

using EmissionChain = std::vector<Emission>;

/// A relevant context: the suffix of the history of the given length.
struct RelevantContext {
  std::size_t length = 0;
  SymbolCounts counts;

  friend bool operator==(const RelevantContext&, const RelevantContext&) = default;
};

struct SnapshotRow {
  BitString context;
  SymbolCounts counts;

  friend bool operator==(const SnapshotRow&, const SnapshotRow&) = default;
};

/// All stored contexts, ordered by length descending then lexicographically.
struct ModelSnapshot {
  std::vector<SnapshotRow> rows;

  /// Human-readable table: "Order k = L" groups, one line per prediction and
  /// escape, followed by the order -1 rows.
  std::string render_table() const;
  /// Machine-readable lines `context<TAB>prediction<TAB>count<TAB>num/den`.
  /// The empty context is written `λ`, order -1 as `-1`, escape as `$`.
  std::string render_tsv() const;

  friend bool operator==(const ModelSnapshot&, const ModelSnapshot&) = default;
};

/// Select the coding context from a longest-to-shortest relevant list.
std::optional<RelevantContext> select_context(const ModelConfig& config, std::span<const RelevantContext> relevant);

class ContextModel;

/// Walks the escape path for the next bit: starts at the selected context
/// and moves to the next shorter relevant context on each escape, ending at
/// order -1.
class PredictionCursor {
 public:
  const Distribution& current() const noexcept { return dist_; }
  bool at_order_minus_one() const noexcept { return !dist_.context_length.has_value(); }
  void escape();

 private:
  friend class ContextModel;
  PredictionCursor(const ContextModel& model, std::uint32_t state, std::size_t length);
  explicit PredictionCursor(const ContextModel& model);
  void load();

  const ContextModel* model_;
  std::uint32_t state_ = 0;
  std::size_t length_ = 0;
  Distribution dist_;
};

class ContextModel {
 public:
  explicit ContextModel(ModelConfig config);

  const ModelConfig& config() const noexcept { return config_; }
  const BitString& history() const noexcept { return history_; }

  /// Stored contexts that are suffixes of the history, longest first.
  std::vector<RelevantContext> relevant_contexts() const;
  /// Context in which coding of the next bit starts; nullopt before any input.
  std::optional<RelevantContext> select_context() const;
  PredictionCursor cursor() const;
  /// Escape/symbol chain that codes `symbol` after the current history.
  EmissionChain emit(Bit symbol) const;
  /// Appends `symbol` to the history, updating counts and contexts.
  void update(Bit symbol);

  /// Counts of a stored context, nullopt when it is not in the model.
  std::optional<SymbolCounts> find(const BitString& context) const;
  bool has_context(const BitString& context) const { return find(context).has_value(); }

  ModelSnapshot snapshot() const;
  /// Visits every stored context as (end of first occurrence, length,
  /// counts) without materialising strings. The empty context is reported
  /// with first_end 0 and length 0.
  void for_each_context(const std::function<void(std::uint64_t first_end, std::size_t length, const SymbolCounts&)>& fn) const;

  std::size_t automaton_states() const noexcept { return states_.size(); }

 private:
  friend class PredictionCursor;

  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  struct State {
    std::uint32_t next[2] = {kNone, kNone};
    std::uint32_t link = kNone;
    std::uint32_t len = 0;
    std::uint32_t first_end = 0;
    std::uint32_t count = 0;  // size of the endpos set
  };

  SymbolCounts counts_of(std::uint32_t state) const;
  std::uint32_t min_length(std::uint32_t state) const;
  bool context_allowed(std::size_t length) const;
  void extend(Bit c);

  ModelConfig config_;
  BitString history_;
  std::vector<State> states_;
  std::uint32_t last_ = 0;
};

}  // namespace ppmlab
