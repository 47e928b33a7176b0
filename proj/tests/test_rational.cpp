#include <catch2/catch_amalgamated.hpp>

#include "commutelab/generators.hpp"
#include "commutelab/rational.hpp"

using namespace commutelab;

TEST_CASE("make_rat produces canonical form") {
  Rat r = make_rat(6, -4);
  CHECK(numerator(r) == -3);
  CHECK(denominator(r) == 2);
  CHECK(make_rat(0, 7) == 0);
  CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("canonical form is idempotent and equality is decidable") {
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(make_rat(-2, 4) == make_rat(1, -2));
  CHECK(make_rat(2, 4) != make_rat(2, 3));
}

TEST_CASE("format and parse round-trip") {
  CHECK(format_rat(make_rat(1, 2)) == "1/2");
  CHECK(format_rat(Rat(-7)) == "-7");
  CHECK(format_rat(Rat(0)) == "0");
  CHECK(parse_rat("3/9") == make_rat(1, 3));
  CHECK(parse_rat("-12") == Rat(-12));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("field axioms on randomized instances") {
  SplitMix64 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    Rat a = make_rat(rng.in_range(-50, 50), rng.in_range(1, 30));
    Rat b = make_rat(rng.in_range(-50, 50), rng.in_range(1, 30));
    Rat c = make_rat(rng.in_range(-50, 50), rng.in_range(1, 30));
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + 0 == a);
    CHECK(a * 1 == a);
    if (a != 0) CHECK(a * (1 / a) == 1);
    // round-trip through the wire format
    CHECK(parse_rat(format_rat(a)) == a);
  }
}

TEST_CASE("rat_pow") {
  CHECK(rat_pow(make_rat(2, 3), 3) == make_rat(8, 27));
  CHECK(rat_pow(Rat(5), 0) == 1);
  CHECK(rat_pow(Rat(0), 4) == 0);
}

TEST_CASE("fourth root bounds enclose the root") {
  Rat x = make_rat(81, 16);  // (3/2)^4
  auto [lo, hi] = fourth_root_bounds(x, 32);
  CHECK(lo <= make_rat(3, 2));
  CHECK(hi >= make_rat(3, 2));
  CHECK(hi - lo <= make_rat(1, 1 << 30));
  auto [zlo, zhi] = fourth_root_bounds(Rat(0), 8);
  CHECK(zlo == 0);
  CHECK(zhi == 0);
  // bounds for a non-perfect power still satisfy lo^4 <= x <= hi^4
  Rat y = make_rat(7, 3);
  auto [ylo, yhi] = fourth_root_bounds(y, 40);
  CHECK(rat_pow(ylo, 4) <= y);
  CHECK(rat_pow(yhi, 4) >= y);
}
