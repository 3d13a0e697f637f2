#pragma once

#include <optional>
#include <string>

namespace relorder {

// Tolerance for the unit-norm and orthogonality invariants.
inline constexpr double kNormTolerance = 1e-9;

enum class Outcome { First, Second };

// Unit vector in a two-dimensional real Hilbert space, written in some
// orthonormal basis. Components may be negative (a change of basis produces
// them); construction from a probability always yields non-negative
// amplitudes.
class StateVector {
 public:
  // Requires a^2 + b^2 = 1 within kNormTolerance.
  StateVector(double a, double b);

  // Builds (sqrt(p), sqrt(1-p)) for p in [0, 1].
  static StateVector from_probability(double p);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double norm_squared() const noexcept { return a_ * a_ + b_ * b_; }

 private:
  double a_;
  double b_;
};

StateVector state_from_probability(double p);

// Squared projection of the state onto the chosen basis vector.
double born_probability(const StateVector& state, Outcome outcome);

// One state expressed in two different orthonormal bases:
//   psi = a|A> + b|B> = c|C> + d|D>
// Consistency of the two coefficient pairs is the caller's responsibility;
// the type only enforces unit norms and distinct basis names.
struct BasisRepresentation {
  BasisRepresentation(std::string basis1, StateVector coeffs_in_1,
                      std::string basis2, StateVector coeffs_in_2);

  std::string basis1_name;
  StateVector coeffs1;
  std::string basis2_name;
  StateVector coeffs2;
};

// The second basis written in coordinates of the first.
struct BasisChange {
  StateVector c_in_ab;  // |C> in the A/B basis
  StateVector d_in_ab;  // |D> in the A/B basis
};

// Expresses basis (C, D) in basis (A, B):
//   |C> = (ac+bd)|A> + (bc-ad)|B>
//   |D> = (ad-bc)|A> + (ac+bd)|B>
// The orthogonal complement of psi is fixed as b|A> - a|B>; with that
// convention the second component can come out negative even when all
// inputs are non-negative. Probabilities are sign-invariant.
BasisChange change_of_basis(const BasisRepresentation& rep);

// Probability of deciding outcome X first and then Y, where `state` is the
// judged state written in the X basis and cross_probability = |<Y|X>|^2.
double sequential_projection(const StateVector& state_in_first_basis,
                             double cross_probability);

struct OrderEffect {
  double p_ab = 0.0;     // first-basis outcome judged first
  double p_ba = 0.0;     // second-basis outcome judged first
  double delta = 0.0;    // p_ab - p_ba
  std::optional<double> ratio;  // max/min; empty when the smaller one is 0
  double cross_probability = 0.0;
};

// Both sequential judgment orders for one state given in two bases.
// state_in_a and state_in_b must describe the same state.
OrderEffect order_effect(const StateVector& state_in_a,
                         const StateVector& state_in_b);

}  // namespace relorder
