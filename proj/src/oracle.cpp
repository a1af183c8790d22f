#include "ppmlab/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ppmlab::oracle {

namespace {

std::uint64_t count_in(const std::string& w, const std::string& x) {
  if (w.empty()) return x.size() + 1;
  std::uint64_t n = 0;
  for (std::size_t p = x.find(w); p != std::string::npos; p = x.find(w, p + 1)) ++n;
  return n;
}

std::uint64_t& slot(Counts& c, char b) { return b == '0' ? c.zero : c.one; }

std::uint64_t distinct(const Counts& c) { return (c.zero > 0 ? 1u : 0u) + (c.one > 0 ? 1u : 0u); }

// Starting context and escape walk over a longest-first relevant list.
std::vector<Step> walk(const ModelConfig& config, const std::vector<ContextRow>& relevant, Bit y) {
  const char yc = static_cast<char>('0' + y);
  std::vector<Step> steps;
  std::size_t idx = 0;
  if (config.mode == Mode::star) {
    for (std::size_t i = relevant.size(); i-- > 0;) {
      if (distinct(relevant[i].second) == 1) {
        idx = i;
        break;
      }
    }
  }
  for (; idx < relevant.size(); ++idx) {
    const auto& [ctx, c] = relevant[idx];
    const std::uint64_t total = c.zero + c.one + distinct(c);
    const std::uint64_t hit = yc == '0' ? c.zero : c.one;
    if (hit > 0) {
      steps.push_back({ctx, yc, hit, total});
      return steps;
    }
    steps.push_back({ctx, '$', distinct(c), total});
  }
  steps.push_back({"-1", yc, 1, 2});
  return steps;
}

std::string to_text(const BitString& b) { return b.to_string(); }

}  // namespace

std::uint64_t naive_occ(const BitString& w, const BitString& x) {
  if (w.empty()) throw std::domain_error("empty pattern");
  if (w.size() > x.size()) return 0;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + w.size() <= x.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < w.size() && match; ++j) match = x[i + j] == w[j];
    if (match) ++n;
  }
  return n;
}

std::vector<BitString> all_de_bruijn(unsigned n) {
  if (n == 0 || n > 5) throw std::domain_error("exhaustive search is limited to 1 <= n <= 5");
  const std::size_t length = std::size_t{1} << n;
  const std::uint32_t mask = static_cast<std::uint32_t>(length - 1);
  std::vector<BitString> found;
  std::vector<bool> seen(length, false);
  std::vector<Bit> s;
  s.reserve(length);

  const auto window_at = [&](std::size_t end) {  // window of n bits ending at `end`, cyclically
    std::uint32_t v = 0;
    for (std::size_t j = 0; j < n; ++j) v = (v << 1) | s[(end + length - (n - 1) + j) % length];
    return v & mask;
  };

  std::function<void()> dfs = [&] {
    if (s.size() == length) {
      std::vector<bool> local = seen;
      for (std::size_t end = 0; end + 1 < n; ++end) {
        const std::uint32_t v = window_at(end);
        if (local[v]) return;
        local[v] = true;
      }
      found.emplace_back(std::vector<Bit>(s));
      return;
    }
    for (Bit b = 0; b < 2; ++b) {
      s.push_back(b);
      if (s.size() >= n) {
        std::uint32_t v = 0;
        for (std::size_t j = s.size() - n; j < s.size(); ++j) v = (v << 1) | s[j];
        if (!seen[v]) {
          seen[v] = true;
          dfs();
          seen[v] = false;
        }
      } else {
        dfs();
      }
      s.pop_back();
    }
  };
  dfs();
  return found;
}

bool exhaustive_db_check(unsigned n, const BitString& candidate) {
  const auto all = all_de_bruijn(n);
  return !all.empty() && *std::min_element(all.begin(), all.end()) == candidate;
}

BitString fkm_db(unsigned n) {
  if (n == 0) throw std::domain_error("order must be positive");
  std::vector<int> a(n + 1, 0);
  BitString out;
  std::function<void(unsigned, unsigned)> gen = [&](unsigned t, unsigned p) {
    if (t > n) {
      if (n % p == 0)
        for (unsigned j = 1; j <= p; ++j) out.push_back(static_cast<Bit>(a[j]));
      return;
    }
    a[t] = a[t - p];
    gen(t + 1, p);
    for (int j = a[t - p] + 1; j < 2; ++j) {
      a[t] = j;
      gen(t + 1, t);
    }
  };
  gen(1, 1);
  return out;
}

// ---------------------------------------------------------------------------

void RuleModel::create(const std::string& u, const std::string& text) {
  table_[u] = {count_in(u + "0", text), count_in(u + "1", text)};
  longest_ = std::max(longest_, u.size());
}

std::vector<ContextRow> RuleModel::relevant() const {
  std::vector<ContextRow> out;
  if (h_.empty()) return out;
  for (std::size_t l = std::min(h_.size(), longest_) + 1; l-- > 0;) {
    const std::string u = h_.substr(h_.size() - l);
    if (auto it = table_.find(u); it != table_.end()) out.emplace_back(*it);
  }
  return out;
}

std::vector<Step> RuleModel::emit(Bit y) const { return walk(config_, relevant(), y); }

void RuleModel::update(Bit y) {
  const char yc = static_cast<char>('0' + y);
  for (const auto& row : relevant()) ++slot(table_[row.first], yc);
  const std::string hy = h_ + yc;

  if (config_.mode == Mode::bounded) {
    for (std::size_t l = 0; l <= std::min<std::size_t>(config_.k, h_.size()); ++l) {
      const std::string u = h_.substr(h_.size() - l);
      if (!table_.contains(u)) create(u, hy);
    }
    h_ = hy;
    return;
  }

  if (!table_.contains("")) create("", hy);

  // Suffixes w of hy that occurred exactly once in h: the earlier
  // occurrence's one-bit extension becomes a context if it has a successor.
  const std::size_t n = hy.size();
  std::vector<std::size_t> match(n, 0);  // common suffix of hy[0..i] and hy
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t m = 0;
    while (m <= i && hy[i - m] == hy[n - 1 - m]) ++m;
    match[i] = m;
  }
  for (std::size_t l = 1; l < n; ++l) {
    std::uint64_t c = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (match[i] >= l) {
        ++c;
        where = i;
      }
    }
    if (c == 0) break;
    if (c != 1 || where + 1 >= n) continue;
    const std::string u = hy.substr(n - l) + hy[where + 1];
    if (table_.contains(u)) continue;
    if (count_in(u + "0", hy) + count_in(u + "1", hy) > 0) create(u, hy);
  }

  // Suffixes u = wb of h, just followed by y, whose parent w is now repeated.
  for (std::size_t l = 1; l <= h_.size(); ++l) {
    const std::string u = h_.substr(h_.size() - l);
    if (table_.contains(u)) continue;
    if (count_in(u.substr(0, l - 1), hy) < 2) break;
    create(u, hy);
  }
  h_ = hy;
}

std::vector<ContextRow> RuleModel::snapshot() const {
  std::vector<ContextRow> rows(table_.begin(), table_.end());
  std::stable_sort(rows.begin(), rows.end(), [](const ContextRow& a, const ContextRow& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  return rows;
}

RuleModel rebuild_model(ModelConfig config, const BitString& prefix) {
  RuleModel m(config);
  for (Bit b : prefix) m.update(b);
  return m;
}

// ---------------------------------------------------------------------------

void SuffixProfileOracle::push(Bit b) {
  const char c = static_cast<char>('0' + b);
  x_.push_back(c);
  prev_match_ = match_;
  const std::size_t n = x_.size();
  for (std::size_t j = n - 1; j-- > 0;) match_[j] = x_[j] == c ? (j > 0 ? match_[j - 1] : 0) + 1 : 0;
  match_.push_back(static_cast<std::uint32_t>(n));
}

std::vector<std::pair<std::size_t, Counts>> SuffixProfileOracle::relevant() const {
  std::vector<std::pair<std::size_t, Counts>> out;
  const std::size_t n = x_.size();
  if (n == 0) return out;

  // succ[l]: successors of earlier occurrences agreeing on exactly l bits.
  std::vector<Counts> succ(n + 2);
  std::vector<std::uint64_t> prev_occ(n + 2, 0);  // same for ends agreeing with x[0..n-2]
  for (std::size_t j = 0; j + 1 < n; ++j) ++slot(succ[match_[j]], x_[j + 1]);
  for (std::size_t j = 0; j + 1 < n; ++j) ++prev_occ[prev_match_[j]];
  if (n >= 2) {
    std::size_t m = 0;
    while (m + 2 <= n && x_[n - 1 - m] == x_[n - 2 - m]) ++m;
    ++prev_occ[m];
  }
  for (std::size_t l = n; l-- > 0;) {
    succ[l].zero += succ[l + 1].zero;
    succ[l].one += succ[l + 1].one;
    prev_occ[l] += prev_occ[l + 1];
  }

  for (std::size_t l = n; l >= 1; --l) {
    const Counts& c = succ[l];
    if (c.zero + c.one == 0) continue;
    if (config_.mode == Mode::bounded && l > config_.k) continue;
    if (config_.mode == Mode::star) {
      const std::uint64_t parent = l == 1 ? n + 1 : prev_occ[l - 1];
      if (parent < 2) continue;
    }
    out.emplace_back(l, c);
  }
  Counts lambda;
  for (char ch : x_) ++slot(lambda, ch);
  out.emplace_back(0, lambda);
  return out;
}

std::vector<Step> SuffixProfileOracle::emit(Bit y) const {
  std::vector<ContextRow> rows;
  for (const auto& [l, c] : relevant()) rows.emplace_back(x_.substr(x_.size() - l), c);
  return walk(config_, rows, y);
}

std::vector<ContextTuple> context_table(ModelConfig config, const BitString& x) {
  const std::size_t n = x.size();
  std::vector<ContextTuple> out;
  if (n == 0) return out;
  Counts lambda;
  for (Bit b : x) ++(b ? lambda.one : lambda.zero);
  out.push_back({0, 0, lambda});

  std::vector<std::uint32_t> col(n, 0);
  std::vector<std::uint64_t> prev_all, all;
  std::vector<Counts> succ;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n; j-- > 0;) col[j] = x[j] == x[i] ? (j > 0 ? col[j - 1] : 0) + 1 : 0;
    const std::size_t cap = i + 1;
    all.assign(cap + 2, 0);
    succ.assign(cap + 2, Counts{});
    std::uint32_t earlier = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t v = std::min<std::size_t>(col[j], cap);
      ++all[v];
      if (j + 1 < n) ++(x[j + 1] ? succ[v].one : succ[v].zero);
      if (j < i) earlier = std::max(earlier, col[j]);
    }
    for (std::size_t l = cap; l-- > 0;) {
      all[l] += all[l + 1];
      succ[l].zero += succ[l + 1].zero;
      succ[l].one += succ[l + 1].one;
    }
    for (std::size_t l = earlier + 1; l <= cap; ++l) {
      if (config.mode == Mode::bounded && l > config.k) break;
      const Counts& c = succ[l];
      if (c.zero + c.one == 0) continue;
      if (config.mode == Mode::star) {
        const std::uint64_t parent = l == 1 ? n + 1 : prev_all[l - 1];
        if (parent < 2) continue;
      }
      out.push_back({i, l, c});
    }
    prev_all.swap(all);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::string DivergenceReport::describe() const {
  if (empty()) return "no divergence";
  std::ostringstream os;
  os << "diverged after " << *position << " bits\n  expected: " << expected << "\n  actual:   " << actual;
  return os.str();
}

std::vector<ContextRow> rows_of(const ModelSnapshot& snap) {
  std::vector<ContextRow> rows;
  rows.reserve(snap.rows.size());
  for (const auto& r : snap.rows) rows.emplace_back(to_text(r.context), Counts{r.counts.zero, r.counts.one});
  return rows;
}

std::vector<Step> steps_of(const ContextModel& model, const EmissionChain& chain) {
  std::vector<Step> steps;
  for (const auto& e : chain) {
    Step s;
    s.context = e.context_length ? to_text(model.history().suffix(*e.context_length)) : "-1";
    s.event = e.event == Event::escape ? '$' : e.event == Event::one ? '1' : '0';
    s.num = e.range.high - e.range.low;
    s.den = e.range.total;
    steps.push_back(s);
  }
  return steps;
}

std::string render(const std::vector<ContextRow>& rows) {
  std::ostringstream os;
  for (const auto& [ctx, c] : rows) os << (ctx.empty() ? "λ" : ctx) << ":" << c.zero << "/" << c.one << " ";
  return os.str();
}

std::string render(const std::vector<Step>& steps) {
  std::ostringstream os;
  for (const auto& s : steps) os << "(" << (s.context.empty() ? "λ" : s.context) << "," << s.event << "," << s.num << "/" << s.den << ") ";
  return os.str();
}

namespace {

DivergenceReport compare_tables(const ContextModel& model, const BitString& prefix) {
  std::vector<ContextTuple> actual;
  model.for_each_context([&](std::uint64_t first_end, std::size_t length, const SymbolCounts& c) {
    actual.push_back({first_end, length, {c.zero, c.one}});
  });
  std::sort(actual.begin(), actual.end());
  const auto expected = context_table(model.config(), prefix);
  const auto show = [](const ContextTuple& t) {
    std::ostringstream os;
    os << "(" << t.first_end << "," << t.length << "," << t.counts.zero << "/" << t.counts.one << ")";
    return os.str();
  };
  const std::size_t common = std::min(expected.size(), actual.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(expected[i] == actual[i])) return {prefix.size(), show(expected[i]), show(actual[i])};
  }
  if (expected.size() != actual.size()) {
    return {prefix.size(), std::to_string(expected.size()) + " contexts", std::to_string(actual.size()) + " contexts"};
  }
  return {};
}

}  // namespace

DivergenceReport compare_every_prefix(ModelConfig config, const BitString& input) {
  RuleModel rule(config);
  ContextModel model(config);
  for (std::size_t pos = 0;; ++pos) {
    const auto expected = rule.snapshot();
    const auto actual = rows_of(model.snapshot());
    if (expected != actual) return {pos, render(expected), render(actual)};
    if (pos == input.size()) break;
    const auto want = rule.emit(input[pos]);
    const auto got = steps_of(model, model.emit(input[pos]));
    if (want != got) return {pos, render(want), render(got)};
    rule.update(input[pos]);
    model.update(input[pos]);
  }
  return {};
}

DivergenceReport compare_relevant_every_prefix(ModelConfig config, const BitString& input,
                                               std::size_t full_state_every) {
  SuffixProfileOracle oracle(config);
  ContextModel model(config);
  for (std::size_t pos = 0;; ++pos) {
    if (full_state_every > 0 && (pos % full_state_every == 0 || pos == input.size())) {
      if (auto d = compare_tables(model, input.prefix(pos)); !d.empty()) return d;
    }
    std::vector<ContextRow> expected, actual;
    for (const auto& [l, c] : oracle.relevant()) expected.emplace_back(std::to_string(l), c);
    for (const auto& r : model.relevant_contexts())
      actual.emplace_back(std::to_string(r.length), Counts{r.counts.zero, r.counts.one});
    if (expected != actual) return {pos, render(expected), render(actual)};
    if (pos == input.size()) break;
    const auto want = oracle.emit(input[pos]);
    const auto got = steps_of(model, model.emit(input[pos]));
    if (want != got) return {pos, render(want), render(got)};
    oracle.push(input[pos]);
    model.update(input[pos]);
  }
  return {};
}

DivergenceReport compare_final_contexts(ModelConfig config, const BitString& input) {
  ContextModel model(config);
  for (Bit b : input) model.update(b);
  return compare_tables(model, input);
}

}  // namespace ppmlab::oracle
