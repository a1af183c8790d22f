#include "ppmlab/ppm_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ppmlab {

std::string ModelConfig::name() const {
  return mode == Mode::star ? std::string("ppm_star") : "ppm_k(k=" + std::to_string(k) + ")";
}

Probability Probability::reduced() const {
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? *this : Probability{num / g, den / g};
}

double Probability::bits() const {
  return std::log2(static_cast<double>(den)) - std::log2(static_cast<double>(num));
}

std::string Probability::to_string() const {
  const Probability r = reduced();
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

EventRange Distribution::range(Event e) const {
  switch (e) {
    case Event::zero:
      return {0, zero, total()};
    case Event::one:
      return {zero, zero + one, total()};
    case Event::escape:
      return {zero + one, total(), total()};
  }
  throw std::logic_error("unknown event");
}

std::optional<RelevantContext> select_context(const ModelConfig& config, std::span<const RelevantContext> relevant) {
  if (relevant.empty()) return std::nullopt;
  if (config.mode == Mode::star) {
    for (auto it = relevant.rbegin(); it != relevant.rend(); ++it) {
      if (it->counts.deterministic()) return *it;
    }
  }
  return relevant.front();
}

// ---------------------------------------------------------------------------
// PredictionCursor

PredictionCursor::PredictionCursor(const ContextModel& model, std::uint32_t state, std::size_t length)
    : model_(&model), state_(state), length_(length) {
  load();
}

PredictionCursor::PredictionCursor(const ContextModel& model) : model_(&model) {}

void PredictionCursor::load() {
  const SymbolCounts c = model_->counts_of(state_);
  dist_ = Distribution{length_, c.zero, c.one, c.escape_count()};
}

void PredictionCursor::escape() {
  if (at_order_minus_one()) throw std::logic_error("cannot escape from order -1");
  if (length_ == 0) {
    dist_ = Distribution{};
    return;
  }
  --length_;
  if (length_ < model_->min_length(state_)) state_ = model_->states_[state_].link;
  load();
}

// ---------------------------------------------------------------------------
// ContextModel

ContextModel::ContextModel(ModelConfig config) : config_(config) {
  states_.emplace_back();
  states_[0].count = 1;  // λ occurs once in the empty history
}

SymbolCounts ContextModel::counts_of(std::uint32_t state) const {
  const State& s = states_[state];
  return {s.next[0] == kNone ? 0u : states_[s.next[0]].count, s.next[1] == kNone ? 0u : states_[s.next[1]].count};
}

std::uint32_t ContextModel::min_length(std::uint32_t state) const {
  return state == 0 ? 0 : states_[states_[state].link].len + 1;
}

bool ContextModel::context_allowed(std::size_t length) const {
  return config_.mode == Mode::star || length <= config_.k;
}

void ContextModel::extend(Bit c) {
  const auto cur = static_cast<std::uint32_t>(states_.size());
  {
    State s;
    s.len = states_[last_].len + 1;
    s.first_end = s.len - 1;
    states_.push_back(s);
  }
  std::uint32_t p = last_;
  while (p != kNone && states_[p].next[c] == kNone) {
    states_[p].next[c] = cur;
    p = states_[p].link;
  }
  if (p == kNone) {
    states_[cur].link = 0;
  } else {
    const std::uint32_t q = states_[p].next[c];
    if (states_[p].len + 1 == states_[q].len) {
      states_[cur].link = q;
    } else {
      const auto clone = static_cast<std::uint32_t>(states_.size());
      State cl = states_[q];
      cl.len = states_[p].len + 1;
      states_.push_back(cl);
      while (p != kNone && states_[p].next[c] == q) {
        states_[p].next[c] = clone;
        p = states_[p].link;
      }
      states_[q].link = clone;
      states_[cur].link = clone;
    }
  }
  last_ = cur;
  // The new end position joins the endpos set of every suffix class.
  for (std::uint32_t v = cur; v != kNone; v = states_[v].link) ++states_[v].count;
}

void ContextModel::update(Bit symbol) {
  symbol &= 1u;
  history_.push_back(symbol);
  extend(symbol);
}

PredictionCursor ContextModel::cursor() const {
  if (history_.empty()) return PredictionCursor(*this);
  const std::uint32_t longest = states_[last_].link;
  const std::size_t longest_len = states_[longest].len;
  if (config_.mode == Mode::star) {
    // Determinism only grows with context length, so the deterministic
    // suffixes form a top range of the suffix chain.
    std::uint32_t best = kNone;
    for (std::uint32_t v = longest; v != kNone; v = states_[v].link) {
      if (!counts_of(v).deterministic()) break;
      best = v;
    }
    if (best != kNone) return PredictionCursor(*this, best, min_length(best));
    return PredictionCursor(*this, longest, longest_len);
  }
  const std::size_t length = std::min<std::size_t>(config_.k, longest_len);
  std::uint32_t v = longest;
  while (min_length(v) > length) v = states_[v].link;
  return PredictionCursor(*this, v, length);
}

std::vector<RelevantContext> ContextModel::relevant_contexts() const {
  std::vector<RelevantContext> out;
  if (history_.empty()) return out;
  std::uint32_t v = states_[last_].link;
  std::size_t length = states_[v].len;
  if (config_.mode == Mode::bounded) length = std::min<std::size_t>(length, config_.k);
  for (;;) {
    while (min_length(v) > length) v = states_[v].link;
    out.push_back({length, counts_of(v)});
    if (length == 0) break;
    --length;
  }
  return out;
}

std::optional<RelevantContext> ContextModel::select_context() const {
  if (history_.empty()) return std::nullopt;
  const PredictionCursor c = cursor();
  const Distribution& d = c.current();
  return RelevantContext{*d.context_length, SymbolCounts{d.zero, d.one}};
}

EmissionChain ContextModel::emit(Bit symbol) const {
  symbol &= 1u;
  EmissionChain chain;
  PredictionCursor c = cursor();
  for (;;) {
    const Distribution& d = c.current();
    if (d.predicts(symbol)) {
      chain.push_back({d.context_length, symbol_event(symbol), d.range(symbol_event(symbol))});
      return chain;
    }
    chain.push_back({d.context_length, Event::escape, d.range(Event::escape)});
    c.escape();
  }
}

std::optional<SymbolCounts> ContextModel::find(const BitString& context) const {
  if (history_.empty()) return std::nullopt;
  if (!context_allowed(context.size())) return std::nullopt;
  std::uint32_t v = 0;
  std::uint32_t parent = 0;
  for (Bit b : context) {
    parent = v;
    v = states_[v].next[b];
    if (v == kNone) return std::nullopt;
  }
  if (context.empty()) return counts_of(0);
  if (config_.mode == Mode::star && states_[parent].count < 2) return std::nullopt;
  const SymbolCounts c = counts_of(v);
  if (c.distinct() == 0) return std::nullopt;
  return c;
}

namespace {

struct Frame {
  std::uint32_t state;
  std::size_t depth;
  int next_bit;
};

}  // namespace

// Depth-first walk over stored contexts. `on_context(state, length, path)`
// sees the automaton state of the context string and the string itself.
template <typename Visitor>
static void walk_contexts(const ModelConfig& config, std::size_t history_size, Visitor&& on_context,
                          const auto& states, std::uint32_t none) {
  if (history_size == 0) return;
  std::vector<Bit> path;
  on_context(std::uint32_t{0}, std::size_t{0}, path);
  std::vector<Frame> stack{{0, 0, 0}};
  const auto has_successor = [&](std::uint32_t v) { return states[v].next[0] != none || states[v].next[1] != none; };
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_bit == 2) {
      stack.pop_back();
      continue;
    }
    const int b = f.next_bit++;
    const std::uint32_t w = states[f.state].next[b];
    if (w == none) continue;
    const std::size_t depth = f.depth + 1;
    if (config.mode == Mode::bounded && depth > config.k) continue;
    if (config.mode == Mode::star && states[f.state].count < 2) continue;
    if (!has_successor(w)) continue;
    path.resize(f.depth);
    path.push_back(static_cast<Bit>(b));
    on_context(w, depth, path);
    const bool descend = config.mode == Mode::star ? states[w].count >= 2 : depth < config.k;
    if (descend) stack.push_back({w, depth, 0});
  }
}

ModelSnapshot ContextModel::snapshot() const {
  ModelSnapshot snap;
  walk_contexts(
      config_, history_.size(),
      [&](std::uint32_t state, std::size_t, const std::vector<Bit>& path) {
        snap.rows.push_back({BitString(path), counts_of(state)});
      },
      states_, kNone);
  std::sort(snap.rows.begin(), snap.rows.end(), [](const SnapshotRow& a, const SnapshotRow& b) {
    if (a.context.size() != b.context.size()) return a.context.size() > b.context.size();
    return a.context < b.context;
  });
  return snap;
}

void ContextModel::for_each_context(
    const std::function<void(std::uint64_t, std::size_t, const SymbolCounts&)>& fn) const {
  walk_contexts(
      config_, history_.size(),
      [&](std::uint32_t state, std::size_t length, const std::vector<Bit>&) {
        fn(length == 0 ? 0 : states_[state].first_end, length, counts_of(state));
      },
      states_, kNone);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string context_label(const BitString& c) { return c.empty() ? std::string("λ") : c.to_string(); }

}  // namespace

std::string ModelSnapshot::render_table() const {
  std::ostringstream out;
  std::optional<std::size_t> order;
  for (const SnapshotRow& row : rows) {
    if (!order || *order != row.context.size()) {
      order = row.context.size();
      out << "Order k = " << *order << "\n";
    }
    const std::uint64_t total = row.counts.total();
    bool first = true;
    const auto line = [&](const std::string& pred, std::uint64_t count) {
      out << (first ? context_label(row.context) : std::string()) << "\t" << pred << "\t" << count << "\t"
          << Probability{count, total}.to_string() << "\n";
      first = false;
    };
    if (row.counts.zero) line("0", row.counts.zero);
    if (row.counts.one) line("1", row.counts.one);
    line("$", row.counts.escape_count());
  }
  out << "Order k = -1\n";
  out << "\t0\t1\t1/2\n";
  out << "\t1\t1\t1/2\n";
  return out.str();
}

std::string ModelSnapshot::render_tsv() const {
  std::ostringstream out;
  for (const SnapshotRow& row : rows) {
    const std::uint64_t total = row.counts.total();
    const std::string label = context_label(row.context);
    if (row.counts.zero) out << label << "\t0\t" << row.counts.zero << "\t" << Probability{row.counts.zero, total}.to_string() << "\n";
    if (row.counts.one) out << label << "\t1\t" << row.counts.one << "\t" << Probability{row.counts.one, total}.to_string() << "\n";
    out << label << "\t$\t" << row.counts.escape_count() << "\t"
        << Probability{row.counts.escape_count(), total}.to_string() << "\n";
  }
  out << "-1\t0\t1\t1/2\n";
  out << "-1\t1\t1\t1/2\n";
  return out.str();
}

}  // namespace ppmlab
