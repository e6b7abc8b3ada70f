#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pamc/record.hpp"
#include "pamc/rng.hpp"
#include "pamc/spins.hpp"

using namespace pamc;

TEST_CASE("SpinConfiguration rejects values other than -1 and +1") {
  CHECK_THROWS_AS(SpinConfiguration({1, 0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SpinConfiguration(std::vector<Spin>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SpinConfiguration({257}), std::invalid_argument);
  CHECK(SpinConfiguration({1, -1}).size() == 2);
}

TEST_CASE("decode_hex expands digits most significant bit first") {
  CHECK(decode_hex("d", 4) == SpinConfiguration({1, 1, -1, 1}));
  CHECK(decode_hex("0", 4) == SpinConfiguration({-1, -1, -1, -1}));
  CHECK(decode_hex("D", 4) == SpinConfiguration({1, 1, -1, 1}));
  CHECK(decode_hex("8", 1) == SpinConfiguration({1}));
  // First digit covers variables 1-4, second digit 5-8.
  CHECK(decode_hex("f0", 8) == SpinConfiguration({1, 1, 1, 1, -1, -1, -1, -1}));
}

TEST_CASE("decode_hex errors") {
  CHECK_THROWS_AS(decode_hex("dd", 4), HexFormatError);
  CHECK_THROWS_AS(decode_hex("", 1), HexFormatError);
  CHECK_THROWS_AS(decode_hex("g", 4), HexFormatError);
  CHECK_THROWS_AS(decode_hex(" d", 5), HexFormatError);
  // n = 5: the second digit may only use its top bit.
  CHECK_NOTHROW(decode_hex("08", 5));
  CHECK_THROWS_AS(decode_hex("04", 5), HexFormatError);
  CHECK_THROWS_AS(decode_hex("01", 5), HexFormatError);
}

TEST_CASE("encode_hex examples") {
  CHECK(encode_hex({1, 1, -1, 1}) == "d");
  CHECK(encode_hex({-1, -1, -1, -1, -1}) == "00");
  CHECK(encode_hex({1, -1, -1, -1, 1}) == "88");
}

TEST_CASE("encode/decode round trip and length law") {
  Rng rng(11);
  for (std::size_t n = 1; n <= 200; ++n) {
    const SpinConfiguration s = random_config(n, rng);
    const std::string hex = encode_hex(s);
    CHECK(hex.size() == hex_length(n));
    CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(decode_hex(hex, n) == s);
  }
  const SpinConfiguration big = random_config(7000, rng);
  const std::string hex = encode_hex(big);
  CHECK(hex.size() == 1750);
  CHECK(decode_hex(hex, 7000) == big);
}

TEST_CASE("read_hex_token strips whitespace") {
  std::istringstream in("  dc7d\n48 54\r\n\t7c ");
  CHECK(read_hex_token(in) == "dc7d48547c");
}

TEST_CASE("random_config is deterministic given the stream state") {
  Rng a(42);
  Rng b(42);
  CHECK(random_config(16, a) == random_config(16, b));
  Rng c(1);
  const auto one = random_config(1, c);
  CHECK((one[0] == 1 || one[0] == -1));
  CHECK_THROWS_AS(random_config(0, c), std::invalid_argument);
}

TEST_CASE("random_config spins are balanced") {
  // Mean of 10^4 independent ±1 spins has standard error 1/100.
  Rng rng(123);
  const SpinConfiguration s = random_config(10000, rng);
  double sum = 0.0;
  for (Spin v : s.spins()) sum += v;
  CHECK(std::abs(sum / 10000.0) < 5.0 / 100.0);
}

TEST_CASE("spin lines round trip") {
  Rng rng(3);
  const SpinConfiguration s = random_config(37, rng);
  std::stringstream io;
  write_spin_lines(io, s);
  CHECK(read_spin_lines(io) == s);
  std::istringstream plus("+1\n-1\n1\n");
  CHECK(read_spin_lines(plus) == SpinConfiguration({1, -1, 1}));
  std::istringstream bad("1\n0\n");
  CHECK_THROWS_AS(read_spin_lines(bad), std::invalid_argument);
}

TEST_CASE("the shipped G63 record is well formed") {
  const auto& rec = published_g63_record();
  CHECK(rec.instance == "G63");
  CHECK(rec.claimed_cut == 27047);
  CHECK(rec.hex.size() == 1750);
  CHECK(rec.hex.substr(0, 8) == "dc7d4854");
  CHECK(rec.hex.substr(rec.hex.size() - 8) == "17def0fb");
  const SpinConfiguration s = decode_hex(rec.hex, 7000);
  CHECK(encode_hex(s) == rec.hex);
}
