#pragma once

#include <vector>

#include "twostep/homogeneous_space.hpp"

namespace twostep {

struct GeodesicSample {
  double t = 0.0;
  GroupElement g;
  AlgebraVector x;  // body velocity, in m
};

struct GeodesicTrajectory {
  std::vector<GeodesicSample> samples;
  // max over samples of | <x(t), x(t)> - <v0, v0> | / max(1, t)
  double max_speed_drift = 0.0;
  double step = 0.0;  // step actually used (t_end split into equal steps)
};

/// Integrates the horizontal lift of the geodesic with initial velocity v0:
///
///   g' = g x,   x' = -U(x, x),   g(0) = I, x(0) = v0,
///
/// with the classical fourth-order Runge-Kutta scheme. Samples are emitted
/// every `output_stride` time units (rounded to whole steps), always including
/// t = 0 and t = t_end. Throws StepTooLarge when the speed drifts by more than
/// 100 tol_ode per unit time.
GeodesicTrajectory integrate_geodesic(const HomogeneousSpace& space, const AlgebraVector& v0, double t_end,
                                      double step, double output_stride = 0.0, double tol_ode = 1e-6);

// ||proj_m log(g1^{-1} g2)||_B; requires g1^{-1} g2 in the log window.
double coset_distance(const GroupElement& g1, const GroupElement& g2, const HomogeneousSpace& space);

}  // namespace twostep
