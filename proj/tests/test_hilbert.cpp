#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "relorder/hilbert.hpp"

using namespace relorder;

namespace {
constexpr double kPrinted = 1e-3;  // tolerance against 4-decimal figures
}

TEST_CASE("state_from_probability reproduces the worked amplitudes") {
  const StateVector topical = state_from_probability(0.90);
  CHECK(topical.a() == doctest::Approx(0.9487).epsilon(kPrinted));
  CHECK(topical.b() == doctest::Approx(0.3162).epsilon(kPrinted));

  const StateVector reliable = state_from_probability(0.9438);
  CHECK(reliable.a() == doctest::Approx(0.9715).epsilon(kPrinted));
  CHECK(reliable.b() == doctest::Approx(0.2370).epsilon(kPrinted));

  const StateVector certain = state_from_probability(1.0);
  CHECK(certain.a() == doctest::Approx(1.0));
  CHECK(certain.b() == doctest::Approx(0.0));
}

TEST_CASE("state_from_probability rejects out-of-range input by value") {
  CHECK_THROWS_WITH_AS(state_from_probability(1.25),
                       doctest::Contains("1.25"), std::domain_error);
  CHECK_THROWS_AS(state_from_probability(-0.01), std::domain_error);
  CHECK_THROWS_AS(state_from_probability(std::nan("")), std::domain_error);
}

TEST_CASE("StateVector enforces unit norm") {
  // The 4-decimal printed amplitudes are off by ~1e-5 in norm, which the
  // 1e-9 contract rejects; exact states must come from probabilities.
  CHECK_THROWS_AS(StateVector(0.9487, 0.3162), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(StateVector(1.0, 0.0));
  CHECK_NOTHROW(StateVector(-std::sqrt(0.5), std::sqrt(0.5)));
}

TEST_CASE("born_probability squares the chosen amplitude") {
  const StateVector s = state_from_probability(0.90);
  CHECK(born_probability(s, Outcome::First) == doctest::Approx(0.90));
  CHECK(born_probability(s, Outcome::Second) == doctest::Approx(0.10));

  // 0.6325^2 = 0.40005625, printed as 0.4001.
  const StateVector t = state_from_probability(0.6325 * 0.6325);
  CHECK(t.a() == doctest::Approx(0.6325));
  CHECK(born_probability(t, Outcome::First) ==
        doctest::Approx(0.4001).epsilon(kPrinted));

  CHECK(born_probability(StateVector(1.0, 0.0), Outcome::Second) ==
        doctest::Approx(0.0));
}

TEST_CASE("change_of_basis reproduces the sentiment-in-topicality vector") {
  const BasisRepresentation rep("topical", state_from_probability(0.90),
                                "positive", state_from_probability(0.40));
  const BasisChange change = change_of_basis(rep);
  CHECK(change.c_in_ab.a() == doctest::Approx(0.8449).epsilon(kPrinted));
  CHECK(change.c_in_ab.b() == doctest::Approx(-0.5349).epsilon(kPrinted));
}

TEST_CASE("change_of_basis reproduces the topicality-in-reliability vector") {
  const BasisRepresentation rep("reliability", state_from_probability(0.9438),
                                "topicality", state_from_probability(0.1250));
  const BasisChange change = change_of_basis(rep);
  CHECK(change.c_in_ab.a() == doctest::Approx(0.5651).epsilon(kPrinted));
  // The orthogonal-complement convention makes the second component negative;
  // its magnitude is what the probabilities see.
  CHECK(change.c_in_ab.b() == doctest::Approx(-0.8250).epsilon(kPrinted));
}

TEST_CASE("change_of_basis on an identical basis is the identity") {
  const StateVector e1(1.0, 0.0);
  const BasisChange change =
      change_of_basis(BasisRepresentation("a", e1, "b", e1));
  CHECK(change.c_in_ab.a() == doctest::Approx(1.0));
  CHECK(change.c_in_ab.b() == doctest::Approx(0.0));
  CHECK(change.d_in_ab.a() == doctest::Approx(0.0));
  CHECK(change.d_in_ab.b() == doctest::Approx(1.0));
}

TEST_CASE("basis names must differ") {
  const StateVector e1(1.0, 0.0);
  CHECK_THROWS_AS(BasisRepresentation("same", e1, "same", e1),
                  std::invalid_argument);
}

TEST_CASE("sequential_projection multiplies the two squared projections") {
  const StateVector s = state_from_probability(0.90);
  const double cross = 0.8449 * 0.8449;
  CHECK(sequential_projection(s, cross) ==
        doctest::Approx(0.6425).epsilon(kPrinted));

  const StateVector t = state_from_probability(0.6325 * 0.6325);
  CHECK(sequential_projection(t, cross) ==
        doctest::Approx(0.2856).epsilon(kPrinted));

  CHECK(sequential_projection(s, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sequential_projection(s, 1.5), std::domain_error);
  CHECK_THROWS_AS(sequential_projection(s, -0.1), std::domain_error);
}

TEST_CASE("order_effect reproduces the topicality/sentiment walkthrough") {
  const OrderEffect effect = order_effect(state_from_probability(0.90),
                                          state_from_probability(0.40));
  CHECK(effect.p_ab == doctest::Approx(0.6425).epsilon(kPrinted));
  CHECK(effect.p_ba == doctest::Approx(0.2856).epsilon(kPrinted));
  CHECK(effect.delta == doctest::Approx(0.3569).epsilon(kPrinted));
  REQUIRE(effect.ratio.has_value());
  CHECK(*effect.ratio == doctest::Approx(0.6425 / 0.2856).epsilon(1e-2));
}

TEST_CASE("order_effect reproduces the reliability/topicality judgment flip") {
  // Document state: 0.9438 on reliability, 0.1250 on topicality.
  const OrderEffect effect = order_effect(state_from_probability(0.9438),
                                          state_from_probability(0.1250));
  CHECK(effect.p_ab == doctest::Approx(0.3014).epsilon(kPrinted));
  CHECK(effect.p_ba == doctest::Approx(0.0399).epsilon(kPrinted));
  REQUIRE(effect.ratio.has_value());
  CHECK(*effect.ratio > 7.4);
  CHECK(*effect.ratio < 7.6);
}

TEST_CASE("order_effect vanishes for a shared basis") {
  const StateVector s = state_from_probability(0.7);
  const OrderEffect effect = order_effect(s, s);
  CHECK(effect.delta == doctest::Approx(0.0));
  REQUIRE(effect.ratio.has_value());
  CHECK(*effect.ratio == doctest::Approx(1.0));
}

TEST_CASE("order_effect ratio is undefined when one path is impossible") {
  const OrderEffect effect = order_effect(state_from_probability(1.0),
                                          state_from_probability(0.0));
  CHECK(effect.cross_probability == doctest::Approx(0.0));
  CHECK(effect.p_ab == doctest::Approx(0.0));
  CHECK(effect.p_ba == doctest::Approx(0.0));
  CHECK_FALSE(effect.ratio.has_value());
}
