#include <doctest.h>

#include <cmath>
#include <random>

#include "ppmlab/debruijn.hpp"
#include "ppmlab/oracle.hpp"
#include "ppmlab/sequence.hpp"

using namespace ppmlab;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

}  // namespace

TEST_CASE("zone layout") {
  const auto z6 = ZoneSpec::of(6);
  CHECK(z6.s == 1);
  CHECK(z6.t == 3);
  CHECK(z6.block_count == 2);
  CHECK(z6.block_length == 192);
  const auto z8 = ZoneSpec::of(8);
  CHECK(z8.s == 3);
  CHECK(z8.t == 1);
  for (unsigned n = 1; n <= 20; ++n) {
    const auto z = ZoneSpec::of(n);
    CHECK((std::uint64_t{1} << z.s) * z.t == n);
    CHECK(z.t % 2 == 1);
    CHECK(z.zone_length() == zone_length(n));
    CHECK(zone_length(n) == n * (std::uint64_t{1} << n));
    CHECK(zone_start(n + 1) - zone_start(n) == zone_length(n));
  }
  CHECK(zone_start(1) == 0);
  CHECK(zone_start(7) == 642);
  CHECK(zone_start(5) == (5 - 2) * 32 + 2);
}

TEST_CASE("zone_of") {
  CHECK(zone_of(0) == 1);
  CHECK(zone_of(1) == 1);
  CHECK(zone_of(2) == 2);
  CHECK(zone_of(9) == 2);
  CHECK(zone_of(10) == 3);
  CHECK(zone_of(641) == 6);
  CHECK(zone_of(642) == 7);
}

TEST_CASE("segments") {
  CHECK(segment(1).to_string() == "01");
  CHECK(segment(2).to_string() == "00110110");
  const auto db6 = martin_db(6).data;
  const auto db6s = shift(martin_db(6), 1).data;
  CHECK(segment(6) == db6.power(3) + db6s.power(3));
  for (unsigned n : {3u, 5u, 7u, 9u}) CHECK(segment(n) == martin_db(n).data.power(n));
  for (unsigned n : {4u, 8u}) {
    BitString expect;
    for (unsigned i = 0; i < n; ++i) expect.append(shift(martin_db(n), i).data);
    CHECK(segment(n) == expect);
  }
  for (unsigned n = 1; n <= 12; ++n) CHECK(segment(n).size() == zone_length(n));
}

TEST_CASE("streaming prefixes") {
  CHECK(sequence_prefix(0).empty());
  CHECK(sequence_prefix(2).to_string() == "01");
  CHECK(sequence_prefix(10).to_string() == "0100110110");
  const auto through = sequence_through(8);
  BitString concat;
  for (unsigned n = 1; n <= 8; ++n) {
    CHECK(through.boundary(n) == concat.size());
    concat.append(segment(n));
  }
  CHECK(through.data == concat);
  CHECK(sequence_prefix(concat.size()) == concat);
  CHECK(sequence_prefix(1000) == concat.prefix(1000));

  SequenceStream s(5);
  std::string got;
  while (auto b = s.next()) got += static_cast<char>('0' + *b);
  CHECK(got == "01001");
  CHECK(s.position() == 5);
  CHECK_FALSE(s.next().has_value());
  CHECK(sequence_through(6).data.size() == 642);
}

TEST_CASE("occ") {
  CHECK(occ(bits("0"), bits("010")) == 2);
  CHECK(occ(bits("0000000"), bits("1") + BitString::repeat(0, 8) + bits("1")) == 2);
  CHECK(occ(bits("00"), bits("0000")) == 3);
  CHECK(occ(bits("0"), BitString{}) == 0);
  CHECK(occ(bits("0101"), bits("01")) == 0);
  CHECK_THROWS_AS(occ(BitString{}, bits("01")), std::domain_error);
}

TEST_CASE("occ agrees with the window-by-window count") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10000; ++t) {
    BitString w, x;
    const auto wl = 1 + rng() % 8;
    const auto xl = rng() % 120;
    for (std::uint64_t i = 0; i < wl; ++i) w.push_back(static_cast<Bit>(rng() & 1u));
    for (std::uint64_t i = 0; i < xl; ++i) x.push_back(static_cast<Bit>(rng() % 3 == 0));
    REQUIRE(occ(w, x) == oracle::naive_occ(w, x));
  }
}

TEST_CASE("occ_block") {
  CHECK(occ_block(bits("01"), bits("0101")) == 2);
  for (const char* w : {"00", "01", "10", "11"}) CHECK(occ_block(bits(w), segment(2)) == 1);
  CHECK(occ_block(bits("01"), bits("1010")) == 0);  // only unaligned matches
  CHECK(occ_block(bits("01"), bits("010")) == 1);   // trailing partial window ignored
  CHECK(occ_block(bits("011"), bits("01101")) == 1);
  CHECK_THROWS_AS(occ_block(BitString{}, bits("0")), std::domain_error);
  const auto s6 = segment(6);
  for (std::uint64_t v = 0; v < 64; ++v) {
    BitString w;
    for (int i = 5; i >= 0; --i) w.push_back(static_cast<Bit>((v >> i) & 1u));
    CHECK(occ_block(w, s6) == 1);
  }
}

TEST_CASE("every zone up to 14 is an enumeration") {
  for (unsigned n = 1; n <= 14; ++n) CHECK(check_enumeration(n));
}

TEST_CASE("normality statistics") {
  const auto p = sequence_prefix(10000);
  const auto one = normality_stats(p, 1);
  REQUIRE(one.size() == 2);
  CHECK(std::abs(one[0].frequency - 0.5) <= 0.02);
  CHECK(std::abs(one[1].frequency - 0.5) <= 0.02);

  const auto zeros = normality_stats(BitString::repeat(0, 100), 1);
  CHECK(zeros[0].word == bits("0"));
  CHECK(zeros[0].frequency == 1.0);
  CHECK(zeros[1].frequency == 0.0);

  const auto s12 = sequence_prefix(zone_start(13));
  const auto three = normality_stats(s12, 3);
  CHECK(three.size() == 14);
  for (const auto& w : three) CHECK(std::abs(w.frequency - std::ldexp(1.0, -static_cast<int>(w.word.size()))) <= 0.01);

  CHECK_THROWS_AS(normality_stats(bits("0101"), 3), std::domain_error);
  CHECK_THROWS_AS(normality_stats(bits("0101"), 0), std::domain_error);
}
