#pragma once

#include <string>
#include <vector>

#include "twostep/lie_algebra.hpp"

namespace twostep {

/// Linear subspace of g stored as a B-orthonormal basis (columns of a d x k
/// matrix of algebra coefficients). Projections are B-orthogonal, matching
/// the usual [.]_m notation.
class Subspace {
 public:
  Subspace() = default;

  // B-orthonormalizes `vectors` by modified Gram-Schmidt (two passes).
  // Linearly dependent vectors are dropped when `drop_dependent` is set and
  // rejected otherwise.
  static Subspace span(AlgebraPtr algebra, const std::vector<AlgebraVector>& vectors, std::string label,
                       bool drop_dependent = true);
  static Subspace span(AlgebraPtr algebra, const Eigen::MatrixXd& columns, std::string label,
                       bool drop_dependent = true);
  static Subspace zero(AlgebraPtr algebra, std::string label);
  static Subspace whole(AlgebraPtr algebra, std::string label);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  AlgebraVector vector(Eigen::Index i) const { return basis_.col(i); }
  Eigen::Index dim() const { return basis_.cols(); }
  bool empty() const { return basis_.cols() == 0; }
  const std::string& label() const { return label_; }

  // Coordinates over the orthonormal basis, and back.
  Eigen::VectorXd coords(const AlgebraVector& x) const { return basis_.transpose() * (algebra_->gram_B() * x); }
  AlgebraVector from_coords(const Eigen::VectorXd& c) const { return basis_ * c; }
  AlgebraVector project(const AlgebraVector& x) const { return basis_ * coords(x); }
  // ||x - proj x||_B / max(1, ||x||_B).
  double distance_ratio(const AlgebraVector& x) const;

  // max |B(u, v)| over basis pairs.
  double orthogonality_residual(const Subspace& other) const;

  Subspace relabeled(std::string label) const;

 private:
  AlgebraPtr algebra_;
  Eigen::MatrixXd basis_;
  std::string label_;
};

// B-orthogonal direct sum of the inputs (re-orthonormalized).
Subspace direct_sum(const std::vector<Subspace>& parts, std::string label);

// B-orthogonal complement of k in g.
Subspace orthocomplement(const Subspace& k, std::string label = "m");

// max over basis pairs (a_i, c_j) of ||[a_i,c_j] - proj_target [a_i,c_j]||_B,
// relative to ||[a_i,c_j]||_B (absolute once the bracket is below 1e-6).
// Small values certify [A, C] in target; a bracket orthogonal to target gives 1.
double bracket_inclusion_residual(const Subspace& a, const Subspace& c, const Subspace& target);

}  // namespace twostep
