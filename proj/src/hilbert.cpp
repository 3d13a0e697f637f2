#include "relorder/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace relorder {

namespace {

[[noreturn]] void throw_norm_violation(double a, double b) {
  std::ostringstream msg;
  msg << "state (" << a << ", " << b << ") is not unit norm: a^2 + b^2 = "
      << a * a + b * b;
  throw std::invalid_argument(msg.str());
}

}  // namespace

StateVector::StateVector(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) ||
      std::abs(a * a + b * b - 1.0) > kNormTolerance) {
    throw_norm_violation(a, b);
  }
}

StateVector StateVector::from_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "probability out of range [0, 1]: " << p;
    throw std::domain_error(msg.str());
  }
  return StateVector(std::sqrt(p), std::sqrt(1.0 - p));
}

StateVector state_from_probability(double p) {
  return StateVector::from_probability(p);
}

double born_probability(const StateVector& state, Outcome outcome) {
  const double amp = outcome == Outcome::First ? state.a() : state.b();
  return amp * amp;
}

BasisRepresentation::BasisRepresentation(std::string basis1,
                                         StateVector coeffs_in_1,
                                         std::string basis2,
                                         StateVector coeffs_in_2)
    : basis1_name(std::move(basis1)),
      coeffs1(coeffs_in_1),
      basis2_name(std::move(basis2)),
      coeffs2(coeffs_in_2) {
  if (basis1_name == basis2_name) {
    throw std::invalid_argument("basis names must differ, both are '" +
                                basis1_name + "'");
  }
}

BasisChange change_of_basis(const BasisRepresentation& rep) {
  const double a = rep.coeffs1.a();
  const double b = rep.coeffs1.b();
  const double c = rep.coeffs2.a();
  const double d = rep.coeffs2.b();
  return BasisChange{StateVector(a * c + b * d, b * c - a * d),
                     StateVector(a * d - b * c, a * c + b * d)};
}

double sequential_projection(const StateVector& state_in_first_basis,
                             double cross_probability) {
  // Cross probabilities computed from unit vectors can overshoot [0, 1] by a
  // few ulp; tolerate that and clamp, reject anything further out.
  if (!(cross_probability >= -kNormTolerance &&
        cross_probability <= 1.0 + kNormTolerance)) {
    std::ostringstream msg;
    msg << "cross probability out of range [0, 1]: " << cross_probability;
    throw std::domain_error(msg.str());
  }
  const double cross = std::clamp(cross_probability, 0.0, 1.0);
  const double p =
      born_probability(state_in_first_basis, Outcome::First) * cross;
  return std::clamp(p, 0.0, 1.0);
}

OrderEffect order_effect(const StateVector& state_in_a,
                         const StateVector& state_in_b) {
  const BasisRepresentation rep("A", state_in_a, "B", state_in_b);
  const StateVector b_in_a = change_of_basis(rep).c_in_ab;
  // |<A|B>|^2 = |<B|A>|^2 for real vectors, so one cross term serves both
  // orders.
  const double cross = b_in_a.a() * b_in_a.a();

  OrderEffect result;
  result.cross_probability = cross;
  result.p_ab = sequential_projection(state_in_a, cross);
  result.p_ba = sequential_projection(state_in_b, cross);
  result.delta = result.p_ab - result.p_ba;
  const double lo = std::min(result.p_ab, result.p_ba);
  const double hi = std::max(result.p_ab, result.p_ba);
  if (lo > 0.0) {
    result.ratio = hi / lo;
  }
  return result;
}

}  // namespace relorder
