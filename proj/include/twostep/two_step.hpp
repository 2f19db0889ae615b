#pragma once

#include <memory>

#include "twostep/homogeneous_space.hpp"

namespace twostep {

using SpacePtr = std::shared_ptr<const HomogeneousSpace>;

/// Candidate geodesic pi(exp tX exp tY) through the origin with initial
/// velocity X_a + X_b, where X = X_a + lambda X_b, Y = (1 - lambda) X_b and
/// lambda = lambda_b / lambda_a.
struct TwoStepCurve {
  SpacePtr space;
  std::size_t a_index = 0;
  std::size_t b_index = 1;
  AlgebraVector Xa;
  AlgebraVector Xb;
  double lambda = 1.0;
  AlgebraVector X;
  AlgebraVector Y;

  // Requires X_a in m_a, X_b in m_b and [m_a, m_b] in m_a (ConditionViolated
  // otherwise).
  static TwoStepCurve make(SpacePtr space, std::size_t a, std::size_t b, AlgebraVector Xa, AlgebraVector Xb);
  // Same, but skips the bracket condition; used to build counterexamples.
  static TwoStepCurve unchecked(SpacePtr space, std::size_t a, std::size_t b, AlgebraVector Xa,
                                AlgebraVector Xb);

  AlgebraVector initial_velocity() const { return Xa + Xb; }
};

// Left-trivialized velocity of alpha(t) = exp(tX) exp(tY).
struct BodyVelocity {
  double t = 0.0;
  AlgebraVector w;      // Ad(exp(-tY)) X + Y
  AlgebraVector Ya;     // Ad(exp(-tY)) X_a, stays in m_a
  AlgebraVector x_m;    // Ya + X_b
  AlgebraVector kappa;  // k-component of w
  AlgebraVector w_dot;  // [Ad(exp(-tY)) X, Y]
  AlgebraVector TXb;    // Ad(exp(-tY)) X_b, equal to X_b
};

struct KoszulTerms {
  double T1 = 0.0;
  double T2 = 0.0;
  double T3 = 0.0;
  double scale = 0.0;  // magnitude of the operands, for relative tolerances

  double sum() const { return T1 + T2 + T3; }
};

GroupElement curve_point(const TwoStepCurve& c, double t);

BodyVelocity body_velocity(const TwoStepCurve& c, double t);

// Closed forms of the three Koszul-formula contributions along the curve.
KoszulTerms koszul_terms(const TwoStepCurve& c, double t, const AlgebraVector& Z);
KoszulTerms koszul_terms(const TwoStepCurve& c, const BodyVelocity& v, const AlgebraVector& Z);

// The same three contributions evaluated from their unsimplified definitions:
//   <[TX, Y]_m, Z>,   <Ya + X_b, [Z, Y]_m>,   2 <[TX, Z]_m, Ya + X_b>.
KoszulTerms koszul_terms_direct(const TwoStepCurve& c, double t, const AlgebraVector& Z);
KoszulTerms koszul_terms_direct(const TwoStepCurve& c, const BodyVelocity& v, const AlgebraVector& Z);

// D(t) = [w_dot]_m + [kappa, x_m]_m + U(x_m, x_m); zero iff the curve is a
// geodesic at t.
AlgebraVector geodesic_defect(const TwoStepCurve& c, double t);

// max_ij |curve_point(c, t) - exp(t (X_a + X_b))|.
double one_step_gap(const TwoStepCurve& c, double t);

}  // namespace twostep
