#include <doctest.h>

#include <sstream>

#include "ppmlab/formats.hpp"
#include "ppmlab/sequence.hpp"

using namespace ppmlab;
using namespace ppmlab::formats;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

}  // namespace

TEST_CASE("text and packed sequences round trip") {
  for (const auto& x : {BitString{}, bits("0100110110"), sequence_prefix(1001)}) {
    std::stringstream text;
    write_sequence(text, x, false);
    CHECK(text.str() == x.to_string());
    CHECK(read_sequence(text, false) == x);

    std::stringstream packed;
    write_sequence(packed, x, true);
    CHECK(packed.str().size() == (x.size() + 7) / 8);
    CHECK(read_sequence(packed, true, x.size()) == x);
  }
}

TEST_CASE("text sequences ignore whitespace and reject other characters") {
  std::stringstream in("01 00\n110110\n");
  CHECK(read_sequence(in, false) == bits("0100110110"));
  std::stringstream bad("0102");
  CHECK_THROWS_AS(read_sequence(bad, false), std::invalid_argument);
}

TEST_CASE("packed bits are MSB first") {
  std::stringstream out;
  write_sequence(out, bits("1000000001"), true);
  const std::string s = out.str();
  REQUIRE(s.size() == 2);
  CHECK(static_cast<unsigned char>(s[0]) == 0x80);
  CHECK(static_cast<unsigned char>(s[1]) == 0x40);
}

TEST_CASE("PPM code file layout") {
  const auto r = encode(ModelConfig::bounded(3), bits("0100110110"));
  std::stringstream io;
  write_ppm(io, PpmFile{ModelConfig::bounded(3), r.code});
  const std::string raw = io.str();
  REQUIRE(raw.size() == 8 + 1 + 2 + 8 + 1 + (r.code.bits.size() + 7) / 8);
  CHECK(raw.substr(0, 8) == "PPMCODE1");
  CHECK(raw[8] == 0);
  CHECK(raw[9] == 3);
  CHECK(raw[10] == 0);
  CHECK(raw[11] == 10);
  CHECK(static_cast<int>(raw[19]) == static_cast<int>((8 - r.code.bits.size() % 8) % 8));

  CHECK(sniff(io) == CodeKind::ppm);
  const auto back = read_ppm(io);
  CHECK(back.config == ModelConfig::bounded(3));
  CHECK(back.code == r.code);
  CHECK(decode(back.code, back.code.declared_length, back.config) == bits("0100110110"));
}

TEST_CASE("star code file and empty payload") {
  const auto r = encode(ModelConfig::star(), BitString{});
  std::stringstream io;
  write_ppm(io, PpmFile{ModelConfig::star(), r.code});
  CHECK(io.str().size() == 20);
  const auto back = read_ppm(io);
  CHECK(back.config == ModelConfig::star());
  CHECK(back.code.bits.empty());
  CHECK(back.code.declared_length == 0);
}

TEST_CASE("LZ78 code file round trip") {
  for (auto pc : {PointerCode::fixed, PointerCode::gamma}) {
    for (const auto& x : {bits("0100011011"), bits("0100"), sequence_prefix(5000)}) {
      const auto code = encode_lz(x, pc);
      std::stringstream io;
      write_lz(io, code);
      CHECK(io.str().substr(0, 8) == "LZ78CODE");
      CHECK(sniff(io) == CodeKind::lz78);
      const auto back = read_lz(io);
      CHECK(back == code);
      CHECK(decode_lz(back) == x);
    }
  }
}

TEST_CASE("malformed files") {
  std::stringstream junk("NOTACODE");
  CHECK(sniff(junk) == CodeKind::unknown);
  CHECK_THROWS_AS(read_ppm(junk), CorruptStream);

  std::stringstream truncated(std::string("PPMCODE1\x01\x00", 10));
  CHECK_THROWS_AS(read_ppm(truncated), CorruptStream);

  std::stringstream bad_pad(std::string("LZ78CODE\x01") + std::string(8, '\0') + "\x09");
  CHECK_THROWS_AS(read_lz(bad_pad), CorruptStream);

  std::stringstream bad_mode(std::string("PPMCODE1\x07") + std::string(10, '\0') + std::string(1, '\0'));
  CHECK_THROWS_AS(read_ppm(bad_mode), CorruptStream);
}
