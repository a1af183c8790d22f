#include <doctest.h>

#include <random>

#include "ppmlab/debruijn.hpp"
#include "ppmlab/oracle.hpp"
#include "ppmlab/sequence.hpp"

using namespace ppmlab;
using namespace ppmlab::oracle;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

BitString random_bits(std::mt19937_64& rng, std::size_t n, unsigned one_in) {
  BitString x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(static_cast<Bit>(rng() % one_in == 0));
  return x;
}

}  // namespace

TEST_CASE("naive occurrence counting") {
  CHECK(naive_occ(bits("11"), bits("0111")) == 2);
  CHECK(naive_occ(bits("010"), bits("01010")) == 2);
  CHECK_THROWS(naive_occ(BitString{}, bits("0101")));
  CHECK(naive_occ(bits("00000"), bits("0000")) == 0);
}

TEST_CASE("exhaustive de Bruijn enumeration") {
  CHECK(all_de_bruijn(1).size() == 2);
  CHECK(all_de_bruijn(2).size() == 4);
  CHECK(all_de_bruijn(3).size() == 16);
  CHECK(all_de_bruijn(4).size() == 256);
  CHECK(all_de_bruijn(3).front() == bits("00010111"));
  CHECK(exhaustive_db_check(3, bits("00010111")));
  CHECK_FALSE(exhaustive_db_check(3, bits("00011101")));
  for (unsigned n = 1; n <= 5; ++n) CHECK(fkm_db(n) == all_de_bruijn(n).front());
}

TEST_CASE("rule replay reproduces the reference tables") {
  const auto b = rebuild_model(ModelConfig::bounded(3), bits("0100110110"));
  const auto s = rebuild_model(ModelConfig::star(), bits("0100110110"));
  CHECK(b.table().size() == 13);
  CHECK(s.table().size() == 15);
  CHECK(b.table().at("110") == Counts{0, 1});
  CHECK(s.table().at("01101") == Counts{0, 1});
  CHECK(s.table().at("") == Counts{5, 5});

  const auto chain = b.emit(0);
  REQUIRE(chain.size() == 2);
  CHECK(chain[0] == Step{"110", '$', 1, 2});
  CHECK(chain[1] == Step{"10", '0', 1, 4});
  CHECK(s.emit(0) == chain);
  CHECK(render(chain) == render(s.emit(0)));

  RuleModel empty(ModelConfig::star());
  CHECK(empty.emit(1) == std::vector<Step>{Step{"-1", '1', 1, 2}});
}

TEST_CASE("rule replay agrees with the model at every prefix") {
  std::mt19937_64 rng(29);
  std::vector<BitString> inputs{sequence_prefix(300), bits("0100110110")};
  for (int t = 0; t < 6; ++t) inputs.push_back(random_bits(rng, 200, 1 + t % 3));
  for (unsigned k = 0; k <= 4; ++k)
    for (const auto& x : inputs) CHECK_MESSAGE(compare_every_prefix(ModelConfig::bounded(k), x).empty(), k);
  for (const auto& x : inputs) {
    const auto rep = compare_every_prefix(ModelConfig::star(), x);
    CHECK_MESSAGE(rep.empty(), rep.describe());
  }
}

TEST_CASE("suffix profile oracle and context table agree with the model") {
  std::mt19937_64 rng(31);
  std::vector<BitString> inputs{sequence_prefix(2000)};
  for (int t = 0; t < 4; ++t) inputs.push_back(random_bits(rng, 600, 2 + t));
  for (const auto& cfg : {ModelConfig::star(), ModelConfig::bounded(3)}) {
    for (const auto& x : inputs) {
      const auto rep = compare_relevant_every_prefix(cfg, x, 250);
      CHECK_MESSAGE(rep.empty(), rep.describe());
      CHECK(compare_final_contexts(cfg, x).empty());
    }
  }
}

TEST_CASE("context table of the running example") {
  const auto table = context_table(ModelConfig::star(), bits("0100110110"));
  CHECK(table.size() == 15);
  CHECK(table.front() == ContextTuple{0, 0, Counts{5, 5}});
}

TEST_CASE("divergence reports describe the first mismatch") {
  DivergenceReport r;
  CHECK(r.empty());
  r.position = 7;
  r.expected = "a";
  r.actual = "b";
  CHECK_FALSE(r.empty());
  CHECK(r.describe().find('7') != std::string::npos);
}
