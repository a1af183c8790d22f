#include <doctest.h>

#include <random>

#include "ppmlab/harness.hpp"
#include "ppmlab/oracle.hpp"
#include "ppmlab/ppm_model.hpp"
#include "ppmlab/sequence.hpp"

using namespace ppmlab;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

ContextModel model_after(ModelConfig cfg, const BitString& x) {
  ContextModel m(cfg);
  for (Bit b : x) m.update(b);
  return m;
}

std::vector<std::size_t> lengths(const std::vector<RelevantContext>& rel) {
  std::vector<std::size_t> out;
  for (const auto& r : rel) out.push_back(r.length);
  return out;
}

struct Cell {
  const char* context;
  std::uint64_t zero, one;
};

// Counts read off the two reference tables for the input 0100110110.
const std::vector<Cell> kBounded3{{"001", 0, 1}, {"010", 1, 0}, {"011", 2, 0}, {"100", 0, 1}, {"101", 0, 1},
                                  {"110", 0, 1}, {"00", 0, 1},  {"01", 1, 2},  {"10", 1, 1},  {"11", 2, 0},
                                  {"0", 1, 3},   {"1", 3, 2},   {"", 5, 5}};
const std::vector<Cell> kStar{{"01101", 0, 1}, {"0110", 0, 1}, {"1101", 0, 1}, {"010", 1, 0}, {"011", 2, 0},
                              {"100", 0, 1},   {"101", 0, 1},  {"110", 0, 1},  {"00", 0, 1},  {"01", 1, 2},
                              {"10", 1, 1},    {"11", 2, 0},   {"0", 1, 3},    {"1", 3, 2},   {"", 5, 5}};

void check_cells(const ContextModel& m, const std::vector<Cell>& cells) {
  const auto snap = m.snapshot();
  REQUIRE(snap.rows.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(snap.rows[i].context == bits(cells[i].context));
    CHECK(snap.rows[i].counts.zero == cells[i].zero);
    CHECK(snap.rows[i].counts.one == cells[i].one);
  }
}

const BitString kRunning = BitString::from_string("0100110110");

}  // namespace

TEST_CASE("bounded k=3 state after the running example") {
  const auto m = model_after(ModelConfig::bounded(3), kRunning);
  check_cells(m, kBounded3);
  CHECK(m.snapshot().render_tsv() == harness::reference_bounded3_tsv());
}

TEST_CASE("star state after the running example") {
  const auto m = model_after(ModelConfig::star(), kRunning);
  check_cells(m, kStar);
  CHECK(m.snapshot().render_tsv() == harness::reference_star_tsv());
}

TEST_CASE("probability cells are exact rationals") {
  const auto m = model_after(ModelConfig::bounded(3), kRunning);
  const auto c01 = m.find(bits("01"));
  REQUIRE(c01);
  CHECK(Probability{c01->zero, c01->total()} == Probability{1, 5});
  CHECK(Probability{c01->one, c01->total()} == Probability{2, 5});
  CHECK(Probability{c01->escape_count(), c01->total()} == Probability{2, 5});
  const auto lambda = m.find(BitString{});
  REQUIRE(lambda);
  CHECK(Probability{lambda->zero, lambda->total()}.to_string() == "5/12");
  CHECK(Probability{lambda->escape_count(), lambda->total()}.to_string() == "1/6");
  CHECK(Probability{2, 4}.reduced().num == 1);
}

TEST_CASE("relevant contexts and the selected context") {
  const auto b = model_after(ModelConfig::bounded(3), kRunning);
  CHECK(lengths(b.relevant_contexts()) == std::vector<std::size_t>{3, 2, 1, 0});
  REQUIRE(b.select_context());
  CHECK(b.select_context()->length == 3);

  const auto s = model_after(ModelConfig::star(), kRunning);
  CHECK(lengths(s.relevant_contexts()) == std::vector<std::size_t>{4, 3, 2, 1, 0});
  REQUIRE(s.select_context());
  CHECK(s.select_context()->length == 3);  // 110: the shortest deterministic one

  const auto rel = s.relevant_contexts();
  CHECK(select_context(ModelConfig::bounded(3), rel)->length == 4);
  CHECK(select_context(ModelConfig::star(), rel)->length == 3);
  CHECK_FALSE(select_context(ModelConfig::star(), {}).has_value());
}

TEST_CASE("emission chain for a following 0, both modes") {
  for (auto cfg : {ModelConfig::bounded(3), ModelConfig::star()}) {
    const auto m = model_after(cfg, kRunning);
    const auto chain = m.emit(0);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].context_length == std::optional<std::size_t>{3});
    CHECK(chain[0].event == Event::escape);
    CHECK(chain[0].probability() == Probability{1, 2});
    CHECK(chain[1].context_length == std::optional<std::size_t>{2});
    CHECK(chain[1].event == Event::zero);
    CHECK(chain[1].probability() == Probability{1, 4});
  }
}

TEST_CASE("empty model") {
  for (auto cfg : {ModelConfig::bounded(3), ModelConfig::star()}) {
    ContextModel m(cfg);
    CHECK(m.relevant_contexts().empty());
    CHECK_FALSE(m.select_context().has_value());
    const auto chain = m.emit(0);
    REQUIRE(chain.size() == 1);
    CHECK_FALSE(chain[0].context_length.has_value());
    CHECK(chain[0].event == Event::zero);
    CHECK(chain[0].probability() == Probability{1, 2});
    CHECK(m.snapshot().rows.empty());
    CHECK(m.snapshot().render_tsv() == "-1\t0\t1\t1/2\n-1\t1\t1\t1/2\n");
  }
}

TEST_CASE("bounded update after the running example") {
  auto m = model_after(ModelConfig::bounded(3), kRunning);
  m.update(0);
  CHECK(*m.find(bits("10")) == SymbolCounts{2, 1});
  CHECK(*m.find(bits("0")) == SymbolCounts{2, 3});
  CHECK(*m.find(BitString{}) == SymbolCounts{6, 5});
  CHECK(*m.find(bits("110")) == SymbolCounts{1, 1});

  // Another 0 starts in 100 and escapes to 00.
  const auto chain = m.emit(0);
  REQUIRE(chain.size() >= 2);
  CHECK(chain[0].context_length == std::optional<std::size_t>{3});
  CHECK(chain[0].event == Event::escape);
  CHECK(chain[0].probability() == Probability{1, 2});
  CHECK(chain[1].context_length == std::optional<std::size_t>{2});
  CHECK(chain[1].event == Event::escape);

  m.update(0);
  CHECK_FALSE(m.has_context(bits("000")));
  CHECK(m.select_context()->length == 2);
  m.update(1);
  REQUIRE(m.has_context(bits("000")));
  CHECK(*m.find(bits("000")) == SymbolCounts{0, 1});
}

TEST_CASE("star update creates the extensions of newly repeated strings") {
  auto m = model_after(ModelConfig::star(), kRunning);
  CHECK_FALSE(m.has_context(bits("001")));
  CHECK_FALSE(m.has_context(bits("1001")));
  m.update(0);
  REQUIRE(m.has_context(bits("001")));
  REQUIRE(m.has_context(bits("1001")));
  CHECK(*m.find(bits("001")) == SymbolCounts{0, 1});
  CHECK(*m.find(bits("1001")) == SymbolCounts{0, 1});
  CHECK(*m.find(bits("110")) == SymbolCounts{1, 1});
  CHECK(*m.find(bits("0110")) == SymbolCounts{1, 1});

  CHECK_FALSE(m.has_context(bits("1100")));
  m.update(0);
  REQUIRE(m.has_context(bits("1100")));
  REQUIRE(m.has_context(bits("01100")));
  CHECK(*m.find(bits("1100")) == SymbolCounts{1, 0});
  CHECK(*m.find(bits("01100")) == SymbolCounts{1, 0});
}

TEST_CASE("k = 0 keeps only the empty context") {
  const auto m = model_after(ModelConfig::bounded(0), kRunning);
  REQUIRE(m.snapshot().rows.size() == 1);
  CHECK(m.snapshot().rows[0].context.empty());
  CHECK(m.snapshot().rows[0].counts == SymbolCounts{5, 5});
}

TEST_CASE("invariants on random and sequence inputs") {
  std::mt19937_64 rng(5);
  std::vector<BitString> inputs{sequence_prefix(700)};
  for (int t = 0; t < 6; ++t) {
    BitString r;
    for (int i = 0; i < 300; ++i) r.push_back(static_cast<Bit>(rng() % 4 == 0));
    inputs.push_back(r);
  }
  std::vector<ModelConfig> configs{ModelConfig::star()};
  for (unsigned k = 0; k <= 5; ++k) configs.push_back(ModelConfig::bounded(k));
  for (const auto& cfg : configs) {
    for (const auto& x : inputs) {
      ContextModel m(cfg);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const auto rel = m.relevant_contexts();
        // Relevant contexts are the suffixes of length 0..L, longest first.
        for (std::size_t j = 0; j < rel.size(); ++j) REQUIRE(rel[j].length == rel.size() - 1 - j);
        const auto chain = m.emit(x[i]);
        REQUIRE(!chain.empty());
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) REQUIRE(chain[j].event == Event::escape);
        REQUIRE(chain.back().event == symbol_event(x[i]));
        REQUIRE(chain.size() <= rel.size() + 1);
        if (cfg.mode == Mode::star && chain.size() == 1 && chain[0].context_length) {
          const auto c = m.find(x.slice(i - *chain[0].context_length, static_cast<std::ptrdiff_t>(i) - 1));
          if (c && c->deterministic()) {
            CHECK(chain[0].probability() == Probability{c->of(x[i]), c->of(x[i]) + 1});
          }
        }
        m.update(x[i]);
      }
      m.for_each_context([&](std::uint64_t first_end, std::size_t length, const SymbolCounts& c) {
        REQUIRE((c.escape_count() == 1 || c.escape_count() == 2));
        REQUIRE(c.zero + c.one + c.escape_count() == c.total());
        if (cfg.mode == Mode::bounded) REQUIRE(length <= cfg.k);
        if (length == 0) return;
        const BitString u = m.history().slice(first_end + 1 - length, static_cast<std::ptrdiff_t>(first_end));
        REQUIRE(c.zero == oracle::naive_occ(u + BitString{0}, m.history()));
        REQUIRE(c.one == oracle::naive_occ(u + BitString{1}, m.history()));
        if (cfg.mode == Mode::star && length >= 2) REQUIRE(oracle::naive_occ(u.prefix(length - 1), m.history()) >= 2);
      });
    }
  }
}

TEST_CASE("model names") {
  CHECK(ModelConfig::star().name() == "ppm_star");
  CHECK(ModelConfig::bounded(3).name() == "ppm_k(k=3)");
}
