#pragma once

#include <Eigen/Dense>

namespace twostep {

// Matrix exponential by scaling and squaring of a truncated Taylor series.
// Relative error stays near 1e-13 for ||A|| up to ~50, which covers every
// matrix this library exponentiates.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

// Principal matrix logarithm. Only called near the identity (the callers
// enforce the log window), where it is well conditioned.
Eigen::MatrixXcd logm(const Eigen::MatrixXcd& g);

// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& a);

}  // namespace twostep
