#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twostep/report.hpp"
#include "twostep/subspace.hpp"

namespace twostep {

// Gram matrix of the deformed inner product over the orthonormal basis of m.
struct MetricOnM {
  Eigen::MatrixXd gram;
  std::vector<double> lambdas;
};

/// Reductive homogeneous space G/K at the algebra level: g = k + m with
/// m the B-orthocomplement of k, an ordered split m = m_1 + ... + m_s and
/// positive weights lambda_i defining
///
///   <x, y> = sum_i lambda_i B(proj_{m_i} x, proj_{m_i} y).
///
/// Structural hypotheses (invariance, orthogonality, natural reductivity)
/// are not enforced here; the check_* members report them so that callers can
/// certify or reject a space. Vectors of m are full algebra coefficient
/// vectors lying in m.
class HomogeneousSpace {
 public:
  HomogeneousSpace(Subspace k, std::vector<Subspace> split, std::vector<double> lambdas, std::string name,
                   std::optional<std::string> degeneracy = std::nullopt);

  const AlgebraPtr& algebra() const { return k_.algebra(); }
  const Subspace& k() const { return k_; }
  const Subspace& m() const { return m_; }
  const std::vector<Subspace>& split() const { return split_; }
  const Subspace& member(std::size_t i) const { return split_.at(i); }
  std::size_t s() const { return split_.size(); }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::string& name() const { return name_; }
  double tol_alg() const { return algebra()->tol_alg(); }

  // Set when the natural split collapsed to a single summand (no deformation
  // axis); such spaces are excluded from two-step verification.
  bool degenerate() const { return degeneracy_.has_value(); }
  const std::optional<std::string>& degeneracy() const { return degeneracy_; }

  HomogeneousSpace with_lambdas(std::vector<double> lambdas) const;
  HomogeneousSpace with_name(std::string name) const;

  AlgebraVector project_m(const AlgebraVector& x) const { return m_.project(x); }
  AlgebraVector project_k(const AlgebraVector& x) const { return k_.project(x); }

  // Coordinates over the concatenated member bases (m_1 first), which is the
  // documented ordering for vectors of m on the command line.
  Eigen::VectorXd split_coords(const AlgebraVector& x) const;
  AlgebraVector from_split_coords(const Eigen::VectorXd& c) const;

  // Throws NotInM when the k-component of x is larger than tol_alg.
  void require_in_m(const AlgebraVector& x) const;

  double deformed_inner(const AlgebraVector& x, const AlgebraVector& y) const;
  double deformed_norm(const AlgebraVector& x) const;
  MetricOnM metric() const;

  // The symmetric bilinear U: m x m -> m with
  //   2 <U(x,y), z> = <[z,x]_m, y> + <x, [z,y]_m>   for all z in m.
  AlgebraVector nomizu_U(const AlgebraVector& x, const AlgebraVector& y) const;
  // Residual of the defining linear system at a computed U(x, y), maximised
  // over the basis of m and divided by max(1, ||x|| ||y||).
  double nomizu_system_residual(const AlgebraVector& x, const AlgebraVector& y, const AlgebraVector& u) const;

  CheckEntry check_k_subalgebra() const;
  CheckEntry check_k_m_orthogonality() const;
  CheckEntry check_split_orthogonality() const;
  CheckEntry check_ad_K_invariance() const;
  // Residual of B([X,Y]_m, Z) + B(Y, [X,Z]_m) over orthonormal basis triples
  // of m. With use_deformed the deformed inner product replaces B.
  CheckEntry check_natural_reductivity(bool use_deformed = false) const;
  // [m_a, m_b] inside m_a.
  CheckEntry check_bracket_inclusion(std::size_t a, std::size_t b) const;

  // The structural checks plus the pairwise inclusion for (0, 1) when s >= 2.
  std::vector<CheckEntry> structural_checks() const;

 private:
  Subspace k_;
  Subspace m_;
  std::vector<Subspace> split_;
  std::vector<double> lambdas_;
  std::string name_;
  std::optional<std::string> degeneracy_;

  // Precomputed data for the metric and the connection operator.
  Eigen::MatrixXd metric_op_;              // A = sum_i lambda_i P_i as a d x d matrix
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt_;  // deformed gram over the m basis
  std::vector<Eigen::MatrixXd> ad_m_basis_;  // ad(z_j) for the m basis

  void precompute();
};

}  // namespace twostep
