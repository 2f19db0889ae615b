#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "twostep/report.hpp"
#include "twostep/two_step.hpp"

namespace twostep {

struct Tolerances {
  double alg = 1e-9;      // algebraic identities
  double ode = 1e-6;      // closed form vs integrator, on cosets
  double defect = 1e-8;   // geodesic defect of closed-form curves
  double koszul = 1e-12;  // Koszul identity, relative to operand scale
  double speed = 1e-10;   // relative drift of the closed-form speed
};

struct VerifyOptions {
  int trials = 50;
  int t_samples = 100;
  std::uint64_t seed = 0;
  std::size_t a_index = 0;
  std::size_t b_index = 1;
  Tolerances tol;
  double oracle_step = 1e-3;
  std::vector<double> oracle_times{0.5, 1.0, 2.0};
  bool run_oracle = true;
  unsigned threads = 0;  // 0 picks the hardware concurrency
};

// Per-trial random stream derived from (seed, trial) only.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Standard Gaussian in B-orthonormal coordinates of m_a + m_b, scaled to unit
// length in the deformed metric. Returns (X_a, X_b).
std::pair<AlgebraVector, AlgebraVector> random_unit_velocity(const HomogeneousSpace& space, std::size_t a,
                                                             std::size_t b, std::mt19937_64& rng);

// Gaussian vector of the subspace with B-norm at most `radius`.
AlgebraVector random_in(const Subspace& sub, double radius, std::mt19937_64& rng);

// max ||Ad(exp u) v - proj_{m_a} Ad(exp u) v||_B / max(1, ||v||_B) over
// `samples` random u in m_b, v in m_a with ||u||, ||v|| <= 2.
double lemma_invariance_residual(const HomogeneousSpace& space, std::size_t a, std::size_t b, int samples,
                                 std::uint64_t seed);

/// Checks that every geodesic with initial velocity in m_a + m_b is the
/// closed-form two-step curve: Koszul identity, geodesic defect, speed
/// constancy, the Ad-invariance lemma and agreement with the RK4 oracle.
/// Throws DegenerateSplit for spaces without a deformation axis and
/// ConditionViolated when [m_a, m_b] is not contained in m_a.
VerificationReport verify_two_step(const SpacePtr& space, const VerifyOptions& options);

}  // namespace twostep
