#pragma once

#include <cstdint>
#include <random>

#include "twostep/subspace.hpp"
#include "twostep/verify.hpp"

namespace twostep::proptest {

// Seeded generator for property tests; every case gets its own stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed, std::uint64_t stream = 0) : rng_(trial_rng(seed, stream)) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  AlgebraVector in(const Subspace& sub, double radius = 1.0) { return random_in(sub, radius, rng_); }

  AlgebraVector unit_in(const Subspace& sub) {
    std::normal_distribution<double> normal;
    for (;;) {
      Eigen::VectorXd c(sub.dim());
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng_);
      if (c.norm() > 1e-9) return sub.from_coords(c / c.norm());
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace twostep::proptest
