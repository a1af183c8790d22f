#include "ppmlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ppmlab/arith_coder.hpp"
#include "ppmlab/debruijn.hpp"
#include "ppmlab/kernels.hpp"
#include "ppmlab/oracle.hpp"
#include "ppmlab/sequence.hpp"

namespace ppmlab::harness {

std::string_view algo_name(Algo a) {
  switch (a) {
    case Algo::ppm_star: return "ppm_star";
    case Algo::ppm_k: return "ppm_k";
    case Algo::lz78: return "lz78";
  }
  return "?";
}

std::optional<Algo> parse_algo(std::string_view name) {
  if (name == "ppm_star") return Algo::ppm_star;
  if (name == "ppm_k") return Algo::ppm_k;
  if (name == "lz78") return Algo::lz78;
  return std::nullopt;
}

ModelConfig RunSpec::model() const {
  if (algo == Algo::ppm_k) return ModelConfig::bounded(k);
  if (algo == Algo::ppm_star) return ModelConfig::star();
  throw std::logic_error("lz78 has no context model");
}

std::vector<std::uint64_t> default_sample_points(unsigned n_max) {
  std::vector<std::uint64_t> points;
  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t bad_end = zone_start(n) + (std::uint64_t{1} << n) + 2 * n;
    const std::uint64_t zone_end = zone_start(n + 1);
    if (bad_end < zone_end) points.push_back(bad_end);
    points.push_back(zone_end);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

namespace {

std::vector<RatioRecord> run_curve(const RunSpec& run, const std::vector<std::uint64_t>& points, const CurveOptions& opt) {
  std::vector<RatioRecord> rows;
  if (points.empty()) return rows;
  const std::uint64_t limit = points.back();
  SequenceStream stream(limit);
  std::optional<IdealMeter> meter;
  std::optional<Encoder> exact;
  std::optional<LzMeter> lz;
  if (run.algo == Algo::lz78) {
    lz.emplace(run.pointer);
  } else {
    meter.emplace(run.model());
    if (!opt.ideal_only) exact.emplace(run.model());
  }
  std::uint64_t pos = 0;
  for (std::uint64_t point : points) {
    while (pos < point) {
      const auto b = stream.next();
      if (!b) throw std::logic_error("sequence stream ended early");
      if (lz) lz->push(*b);
      if (meter) meter->push(*b);
      if (exact) {
        exact->push(*b);
        if (pos + 1 >= opt.exact_budget) exact.reset();
      }
      ++pos;
    }
    RatioRecord r;
    r.prefix_len = point;
    r.zone = zone_of(point - 1);
    r.algo = run.algo;
    if (run.algo == Algo::ppm_k) r.k = run.k;
    if (lz) {
      r.output_bits = lz->bits();
    } else {
      const double ideal = meter->bits();
      r.output_bits = static_cast<std::uint64_t>(std::ceil(ideal - 1e-9));
      if (exact && point <= opt.exact_budget) {
        const std::uint64_t bits = exact->finish().bits.size();
        if (std::abs(static_cast<double>(bits) - ideal) > 2.0) {
          throw std::logic_error("exact and ideal code lengths differ by more than 2 bits");
        }
        r.output_bits = bits;
      }
    }
    r.ratio = static_cast<double>(r.output_bits) / static_cast<double>(point);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::vector<RatioRecord> ratio_curve(const std::vector<RunSpec>& runs, const CurveOptions& options) {
  std::vector<std::uint64_t> points;
  for (std::uint64_t p : options.points)
    if (p > 0) points.push_back(p);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<std::vector<RatioRecord>> per_run(runs.size());
  std::vector<std::string> errors(runs.size());
  const auto count = static_cast<std::int64_t>(runs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      per_run[i] = run_curve(runs[i], points, options);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);

  std::vector<RatioRecord> rows;
  for (auto& r : per_run) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const RatioRecord& a, const RatioRecord& b) {
    if (a.algo != b.algo) return a.algo < b.algo;
    if (a.k != b.k) return a.k < b.k;
    return a.prefix_len < b.prefix_len;
  });
  return rows;
}

std::string to_csv(const std::vector<RatioRecord>& rows) {
  std::string out = "prefix_len,zone,algo,k,output_bits,ratio\n";
  char ratio[64];
  for (const auto& r : rows) {
    std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
    out += std::to_string(r.prefix_len) + "," + std::to_string(r.zone) + "," + std::string(algo_name(r.algo)) + "," +
           (r.k ? std::to_string(*r.k) : std::string()) + "," + std::to_string(r.output_bits) + "," + ratio + "\n";
  }
  return out;
}

double zone_cost_bound(unsigned n) {
  const double dn = n;
  const double two_n = std::ldexp(1.0, static_cast<int>(n));
  return (two_n + 2 * dn + dn * dn) * std::log2(std::pow(dn, 5)) + dn * std::log2(dn - 1) + 2 * two_n * std::log2(dn);
}

double bad_zone_bound(unsigned n) {
  const double dn = n;
  return (std::ldexp(1.0, static_cast<int>(n)) + 2 * dn) * std::log2(std::pow(dn, 5));
}

std::vector<ZoneCost> star_zone_costs(unsigned n_max) {
  std::vector<ZoneCost> costs;
  IdealMeter meter(ModelConfig::star());
  SequenceStream stream(zone_start(n_max + 1));
  for (unsigned n = 1; n <= n_max; ++n) {
    ZoneCost c;
    c.n = n;
    const std::uint64_t bad = (std::uint64_t{1} << n) + 2 * n;
    const std::uint64_t len = zone_length(n);
    for (std::uint64_t i = 0; i < len; ++i) {
      const double cost = meter.push(*stream.next());
      c.zone_bits += cost;
      if (i < bad) c.bad_zone_bits += cost;
    }
    costs.push_back(c);
  }
  return costs;
}

std::vector<BoundRecord> zone_bound_records(const std::vector<ZoneCost>& costs, unsigned n_lo) {
  std::vector<BoundRecord> out;
  for (const auto& c : costs)
    if (c.n >= n_lo) out.push_back({c.n, c.zone_bits, zone_cost_bound(c.n)});
  return out;
}

std::vector<BoundRecord> bad_zone_records(const std::vector<ZoneCost>& costs, unsigned n_lo) {
  std::vector<BoundRecord> out;
  for (const auto& c : costs)
    if (c.n >= n_lo) out.push_back({c.n, c.bad_zone_bits, bad_zone_bound(c.n)});
  return out;
}

namespace {

BitString word_of(std::uint64_t v, unsigned n) {
  BitString w;
  for (unsigned i = n; i-- > 0;) w.push_back(static_cast<Bit>((v >> i) & 1u));
  return w;
}

// Feeds S into a star model and calls `check` at each requested position.
void star_checkpoints(const std::vector<std::pair<std::uint64_t, unsigned>>& at,
                      const std::function<void(const ContextModel&, unsigned)>& check) {
  if (at.empty()) return;
  ContextModel model(ModelConfig::star());
  SequenceStream stream(at.back().first);
  std::uint64_t pos = 0;
  for (const auto& [point, n] : at) {
    while (pos < point) {
      model.update(*stream.next());
      ++pos;
    }
    check(model, n);
  }
}

}  // namespace

std::vector<CheckRecord> context_building_check(unsigned n_lo, unsigned n_hi) {
  std::vector<std::pair<std::uint64_t, unsigned>> at;
  for (unsigned n = n_lo; n <= n_hi; ++n) at.emplace_back(zone_start(n) + (std::uint64_t{1} << n) + n, n);
  std::vector<CheckRecord> out;
  star_checkpoints(at, [&](const ContextModel& model, unsigned n) {
    std::uint64_t missing = 0;
    std::string first;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const BitString w = word_of(v, n);
      if (!model.has_context(w)) {
        if (missing++ == 0) first = w.to_string();
      }
    }
    CheckRecord r{n, missing == 0, {}};
    r.detail = missing == 0 ? "all " + std::to_string(std::uint64_t{1} << n) + " contexts present"
                            : std::to_string(missing) + " missing, first " + first;
    out.push_back(r);
  });
  return out;
}

std::vector<CheckRecord> deterministic_context_check(unsigned n_lo, unsigned n_hi) {
  std::vector<std::pair<std::uint64_t, unsigned>> at;
  for (unsigned n = n_lo; n <= n_hi; ++n)
    if (n % 2 == 1) at.emplace_back(zone_start(n) + (std::uint64_t{1} << n) + 2 * n, n);
  std::vector<CheckRecord> out;
  star_checkpoints(at, [&](const ContextModel& model, unsigned n) {
    const BitString ctx = BitString{0, 1} + BitString::repeat(0, n - 2) + BitString{1};
    const auto c = model.find(ctx);
    CheckRecord r{n, false, {}};
    if (!c) {
      r.detail = "context " + ctx.to_string() + " absent";
    } else {
      r.holds = c->zero == 0 && c->one > 0;
      r.detail = "context " + ctx.to_string() + " counts 0:" + std::to_string(c->zero) + " 1:" + std::to_string(c->one);
    }
    out.push_back(r);
  });
  return out;
}

namespace {

struct RefRow {
  const char* context;
  char event;
  unsigned count;
  const char* prob;
};

std::string tsv_of(std::initializer_list<RefRow> rows) {
  std::string out;
  for (const auto& r : rows) {
    out += std::string(r.context) + "\t" + std::string(1, r.event) + "\t" + std::to_string(r.count) + "\t" + r.prob + "\n";
  }
  return out;
}

const std::string& bounded3_reference() {
  static const std::string tsv = tsv_of({
      {"001", '1', 1, "1/2"}, {"001", '$', 1, "1/2"}, {"010", '0', 1, "1/2"}, {"010", '$', 1, "1/2"},
      {"011", '0', 2, "2/3"}, {"011", '$', 1, "1/3"}, {"100", '1', 1, "1/2"}, {"100", '$', 1, "1/2"},
      {"101", '1', 1, "1/2"}, {"101", '$', 1, "1/2"}, {"110", '1', 1, "1/2"}, {"110", '$', 1, "1/2"},
      {"00", '1', 1, "1/2"},  {"00", '$', 1, "1/2"},  {"01", '0', 1, "1/5"},  {"01", '1', 2, "2/5"},
      {"01", '$', 2, "2/5"},  {"10", '0', 1, "1/4"},  {"10", '1', 1, "1/4"},  {"10", '$', 2, "1/2"},
      {"11", '0', 2, "2/3"},  {"11", '$', 1, "1/3"},  {"0", '0', 1, "1/6"},   {"0", '1', 3, "1/2"},
      {"0", '$', 2, "1/3"},   {"1", '0', 3, "3/7"},   {"1", '1', 2, "2/7"},   {"1", '$', 2, "2/7"},
      {"λ", '0', 5, "5/12"},  {"λ", '1', 5, "5/12"},  {"λ", '$', 2, "1/6"},   {"-1", '0', 1, "1/2"},
      {"-1", '1', 1, "1/2"},
  });
  return tsv;
}

const std::string& star_reference() {
  static const std::string tsv = tsv_of({
      {"01101", '1', 1, "1/2"}, {"01101", '$', 1, "1/2"}, {"0110", '1', 1, "1/2"}, {"0110", '$', 1, "1/2"},
      {"1101", '1', 1, "1/2"},  {"1101", '$', 1, "1/2"},  {"010", '0', 1, "1/2"},  {"010", '$', 1, "1/2"},
      {"011", '0', 2, "2/3"},   {"011", '$', 1, "1/3"},   {"100", '1', 1, "1/2"},  {"100", '$', 1, "1/2"},
      {"101", '1', 1, "1/2"},   {"101", '$', 1, "1/2"},   {"110", '1', 1, "1/2"},  {"110", '$', 1, "1/2"},
      {"00", '1', 1, "1/2"},    {"00", '$', 1, "1/2"},    {"01", '0', 1, "1/5"},   {"01", '1', 2, "2/5"},
      {"01", '$', 2, "2/5"},    {"10", '0', 1, "1/4"},    {"10", '1', 1, "1/4"},   {"10", '$', 2, "1/2"},
      {"11", '0', 2, "2/3"},    {"11", '$', 1, "1/3"},    {"0", '0', 1, "1/6"},    {"0", '1', 3, "1/2"},
      {"0", '$', 2, "1/3"},     {"1", '0', 3, "3/7"},     {"1", '1', 2, "2/7"},    {"1", '$', 2, "2/7"},
      {"λ", '0', 5, "5/12"},    {"λ", '1', 5, "5/12"},    {"λ", '$', 2, "1/6"},    {"-1", '0', 1, "1/2"},
      {"-1", '1', 1, "1/2"},
  });
  return tsv;
}

}  // namespace

std::string_view reference_bounded3_tsv() { return bounded3_reference(); }
std::string_view reference_star_tsv() { return star_reference(); }

// ---------------------------------------------------------------------------
// Verification suites

namespace {

class Report {
 public:
  explicit Report(SuiteResult& r, const std::function<void(const std::string&)>& progress)
      : r_(r), progress_(progress) {}
  void check(bool ok, const std::string& what) {
    if (!ok) r_.passed = false;
    line((ok ? "ok    " : "FAIL  ") + what);
  }
  void line(const std::string& s) {
    r_.lines.push_back(s);
    if (progress_) progress_(s);
  }

 private:
  SuiteResult& r_;
  const std::function<void(const std::string&)>& progress_;
};

std::string fmt(double v, int places = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

void suite_debruijn(Report& rep) {
  for (unsigned n = 1; n <= 14; ++n) {
    const auto db = martin_db(n);
    rep.check(verify_db(db.data, n), "db(" + std::to_string(n) + ") is a de Bruijn string");
  }
  for (unsigned n = 3; n <= 14; ++n) {
    const auto& d = martin_db(n).data;
    const BitString head = BitString::repeat(0, n) + BitString{1} + BitString::repeat(0, n - 2) + BitString{1, 1};
    const bool head_ok = d.prefix(2 * n + 1) == head;
    const bool tail_ok = d.suffix(n) == BitString::repeat(1, n) && d[d.size() - n - 1] == 0;
    rep.check(head_ok && tail_ok, "db(" + std::to_string(n) + ") starts 0^n 1 0^{n-2} 11 and ends 0 1^n");
  }
  for (unsigned n = 1; n <= 5; ++n) {
    rep.check(oracle::exhaustive_db_check(n, martin_db(n).data), "db(" + std::to_string(n) + ") is the least by exhaustive search");
  }
  for (unsigned n = 1; n <= 14; ++n) {
    rep.check(oracle::fkm_db(n) == martin_db(n).data, "db(" + std::to_string(n) + ") matches the Lyndon-word construction");
  }
  rep.check(verify_db(BitString::from_string("00011101"), 3), "00011101 is a de Bruijn string of order 3");
}

void suite_enumeration(Report& rep) {
  for (unsigned n = 1; n <= 14; ++n) {
    rep.check(check_enumeration(n), "S_" + std::to_string(n) + " lists every word of length " + std::to_string(n) + " once per aligned block");
  }
}

void suite_tables(Report& rep) {
  const auto x = BitString::from_string("0100110110");
  for (const auto& [cfg, ref] : {std::pair{ModelConfig::bounded(3), bounded3_reference()}, std::pair{ModelConfig::star(), star_reference()}}) {
    ContextModel m(cfg);
    for (Bit b : x) m.update(b);
    rep.check(m.snapshot().render_tsv() == ref, cfg.name() + " model after 0100110110 matches the reference table");
    const auto chain = oracle::steps_of(m, m.emit(0));
    const std::vector<oracle::Step> want{{"110", '$', 1, 2}, {"10", '0', 1, 4}};
    rep.check(chain == want, cfg.name() + " codes a following 0 as (110,$,1/2) (10,0,1/4)");
  }
}

void suite_context_building(Report& rep) {
  for (const auto& r : context_building_check(3, 10))
    rep.check(r.holds, "n=" + std::to_string(r.n) + ": " + r.detail);
}

void suite_zone_bound(Report& rep) {
  const auto rows = zone_bound_records(star_zone_costs(13), 1);
  for (const auto& r : rows) {
    const std::string text = "n=" + std::to_string(r.n) + ": zone cost " + fmt(r.measured_bits) + " bits, bound " + fmt(r.bound_bits);
    if (r.n >= 8) rep.check(r.holds(), text);
    else rep.line((r.holds() ? "info  " : "info  (exceeds) ") + text);
  }
  const auto first = first_holding(rows, [](const BoundRecord& r) { return r.holds(); });
  rep.line("info  bound holds from n=" + (first ? std::to_string(*first) : std::string("(never)")) + " onward in the tested range");
}

void suite_bad_zone(Report& rep) {
  const auto rows = bad_zone_records(star_zone_costs(13), 1);
  for (const auto& r : rows) {
    const std::string text = "n=" + std::to_string(r.n) + ": bad-zone cost " + fmt(r.measured_bits) + " bits, bound " + fmt(r.bound_bits);
    if (r.n >= 8) rep.check(r.holds(), text);
    else rep.line("info  " + text);
  }
  const auto first = first_holding(rows, [](const BoundRecord& r) { return r.holds(); });
  rep.line("info  bound holds from n=" + (first ? std::to_string(*first) : std::string("(never)")) + " onward in the tested range");
}

void suite_deterministic_context(Report& rep) {
  const auto rows = deterministic_context_check(3, 13);
  for (const auto& r : rows) {
    const std::string text = "n=" + std::to_string(r.n) + ": " + r.detail;
    if (r.n >= 7) rep.check(r.holds, text);
    else rep.line("info  " + text);
  }
  const auto first = first_holding(rows, [](const CheckRecord& r) { return r.holds; });
  rep.line("info  holds from n=" + (first ? std::to_string(*first) : std::string("(never)")) + " onward among odd n");
}

void suite_oracle(Report& rep) {
  std::mt19937_64 rng(20240531);
  const auto s5000 = sequence_prefix(5000);
  for (unsigned k = 0; k <= 5; ++k) {
    const auto d = oracle::compare_every_prefix(ModelConfig::bounded(k), s5000);
    rep.check(d.empty(), "ppm_k k=" + std::to_string(k) + " rule replay on every prefix of S|5000 " + (d.empty() ? "" : d.describe()));
  }
  {
    const auto d = oracle::compare_every_prefix(ModelConfig::star(), sequence_prefix(700));
    rep.check(d.empty(), "ppm_star rule replay on every prefix of S|700 " + (d.empty() ? "" : d.describe()));
    const auto e = oracle::compare_relevant_every_prefix(ModelConfig::star(), s5000, 500);
    rep.check(e.empty(), "ppm_star relevant contexts and chains on every prefix of S|5000, full table every 500 bits " + (e.empty() ? "" : e.describe()));
  }
  bool random_ok = true;
  for (int t = 0; t < 20 && random_ok; ++t) {
    BitString r;
    for (int i = 0; i < 500; ++i) r.push_back(static_cast<Bit>(rng() & 1u));
    random_ok = oracle::compare_every_prefix(ModelConfig::star(), r).empty() && oracle::compare_every_prefix(ModelConfig::bounded(t % 6), r).empty();
  }
  rep.check(random_ok, "rule replay on 20 random 500-bit strings, both modes");
  bool occ_ok = true;
  for (int t = 0; t < 2000 && occ_ok; ++t) {
    BitString w, x;
    const auto wl = 1 + rng() % 6, xl = rng() % 200;
    for (std::uint64_t i = 0; i < wl; ++i) w.push_back(static_cast<Bit>(rng() & 1u));
    for (std::uint64_t i = 0; i < xl; ++i) x.push_back(static_cast<Bit>(rng() & 1u));
    occ_ok = oracle::naive_occ(w, x) == occ(w, x);
  }
  rep.check(occ_ok, "occ agrees with the window-by-window count on 2000 random cases");
}

void suite_roundtrip(Report& rep) {
  std::mt19937_64 rng(7);
  std::vector<BitString> inputs{BitString{}, BitString::from_string("0100110110"), sequence_prefix(10000)};
  for (int t = 0; t < 10; ++t) {
    BitString r;
    const auto len = rng() % 2001;
    for (std::uint64_t i = 0; i < len; ++i) r.push_back(static_cast<Bit>(rng() & 1u));
    inputs.push_back(r);
  }
  std::vector<ModelConfig> configs{ModelConfig::star()};
  for (unsigned k = 0; k <= 5; ++k) configs.push_back(ModelConfig::bounded(k));
  for (const auto& cfg : configs) {
    bool ok = true;
    for (const auto& x : inputs) ok = ok && decode(encode(cfg, x).code, x.size(), cfg) == x;
    rep.check(ok, cfg.name() + " decode(encode(x)) = x on " + std::to_string(inputs.size()) + " inputs");
  }
  for (PointerCode pc : {PointerCode::fixed, PointerCode::gamma}) {
    bool ok = true;
    for (const auto& x : inputs) ok = ok && decode_lz(encode_lz(x, pc)) == x;
    rep.check(ok, std::string("lz78 ") + (pc == PointerCode::fixed ? "fixed" : "gamma") + " decode(encode(x)) = x");
  }
}

void suite_normality(Report& rep) {
  const auto prefix = sequence_prefix(zone_start(13));
  double worst = 0;
  for (const auto& w : normality_stats(prefix, 3)) {
    worst = std::max(worst, std::abs(w.frequency - std::ldexp(1.0, -static_cast<int>(w.word.size()))));
  }
  rep.check(worst <= 0.01, "words of length <= 3 in S_1..S_12: largest deviation " + fmt(worst, 6));
}

const std::vector<std::pair<std::string, void (*)(Report&)>>& suites() {
  static const std::vector<std::pair<std::string, void (*)(Report&)>> all{
      {"debruijn", suite_debruijn},
      {"enumeration", suite_enumeration},
      {"tables", suite_tables},
      {"context-building", suite_context_building},
      {"zone-bound", suite_zone_bound},
      {"bad-zone", suite_bad_zone},
      {"deterministic-context", suite_deterministic_context},
      {"oracle", suite_oracle},
      {"roundtrip", suite_roundtrip},
      {"normality", suite_normality},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.push_back("all");
  return names;
}

SuiteResult run_suite(const std::string& name, const std::function<void(const std::string&)>& progress) {
  SuiteResult result;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  Report rep(result, progress);
  bool found = false;
  for (const auto& [suite, fn] : suites()) {
    if (name != "all" && name != suite) continue;
    found = true;
    if (name == "all") rep.line("== " + suite);
    fn(rep);
  }
  if (!found) throw std::invalid_argument("unknown suite: " + name);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ppmlab::harness
