#include <catch2/catch_amalgamated.hpp>

#include "commutelab/generators.hpp"
#include "commutelab/measure.hpp"

using namespace commutelab;

TEST_CASE("uniform_on") {
  ScalarMeasure nu = uniform_on({Rat(1), Rat(2), Rat(4)});
  CHECK(nu.is_probability);
  CHECK(nu.total_mass() == 1);
  CHECK(nu.at(Rat(2)) == make_rat(1, 3));
  CHECK(nu.at(Rat(3)) == 0);
  CHECK_NOTHROW(nu.validate());
  CHECK_THROWS_AS(uniform_on({}), std::invalid_argument);
  CHECK_THROWS_AS(uniform_on({Rat(1), Rat(1)}), std::invalid_argument);
}

TEST_CASE("validate rejects bad measures") {
  ScalarMeasure nu;
  nu.atoms[Rat(1)] = make_rat(1, 2);
  nu.atoms[Rat(2)] = make_rat(1, 2);
  nu.is_probability = true;
  CHECK_NOTHROW(nu.validate());

  ScalarMeasure heavy = nu;
  heavy.atoms[Rat(3)] = 1;
  CHECK_THROWS_AS(heavy.validate(), std::invalid_argument);

  ScalarMeasure negative = nu;
  negative.atoms[Rat(3)] = -1;
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);

  ScalarMeasure sub = nu;
  sub.atoms.erase(Rat(2));
  CHECK_THROWS_AS(sub.validate(), std::invalid_argument);  // flag vs mass
  sub.is_probability = false;
  CHECK_NOTHROW(sub.validate());
}

TEST_CASE("norms and support") {
  ScalarMeasure nu;
  nu.atoms[Rat(0)] = make_rat(1, 2);
  nu.atoms[Rat(5)] = make_rat(1, 4);
  CHECK(nu.mass_at_zero() == make_rat(1, 2));
  CHECK(nu.norm_inf() == make_rat(1, 2));
  CHECK(nu.norm_pow(2) == make_rat(5, 16));
  CHECK(nu.support() == std::vector<Rat>{Rat(0), Rat(5)});
}

TEST_CASE("product_measure") {
  ScalarMeasure nu = uniform_on({Rat(0), Rat(1)});
  MatrixMeasure mu = product_measure(nu);
  CHECK(mu.atoms.size() == 16);
  CHECK(mu.total_mass() == 1);
  CHECK(mu.atoms.at(Mat2{Rat(0), Rat(1), Rat(0), Rat(1)}) == make_rat(1, 16));
  CHECK(mu.is_probability);

  ScalarMeasure big = uniform_on(interval(13));
  CHECK_THROWS_AS(product_measure(big), cap_error);
  CHECK_NOTHROW(product_measure(big, 13));
}

TEST_CASE("product measure of a non-probability measure") {
  ScalarMeasure nu;
  nu.atoms[Rat(1)] = make_rat(1, 3);
  nu.atoms[Rat(2)] = make_rat(1, 3);
  MatrixMeasure mu = product_measure(nu);
  CHECK_FALSE(mu.is_probability);
  CHECK(mu.total_mass() == rat_pow(make_rat(2, 3), 4));
}

TEST_CASE("matrix measure basics") {
  MatrixMeasure mu = sharp_example(2);
  CHECK(mu.atoms.size() == 8);
  CHECK(mu.total_mass() == 1);
  CHECK_NOTHROW(mu.validate());
}
