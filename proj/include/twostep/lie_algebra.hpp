#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace twostep {

// Real coefficients over the ordered basis of a MatrixLieAlgebra.
using AlgebraVector = Eigen::VectorXd;

enum class FormKind { NegKilling, NegTrace };

const char* to_string(FormKind kind);
FormKind form_kind_from_string(const std::string& s);

// An element of the matrix group generated by the algebra.
struct GroupElement {
  Eigen::MatrixXcd matrix;

  static GroupElement identity(Eigen::Index n);

  GroupElement operator*(const GroupElement& other) const { return {matrix * other.matrix}; }
  GroupElement inverse() const;
  // ||g g* - I||_max; group elements are only validated on demand.
  double unitarity_residual() const;
};

struct Decomposition {
  AlgebraVector coeffs;
  double residual;  // relative least-squares residual of the expansion
};

/// Compact matrix Lie algebra g given by an ordered basis of anti-Hermitian
/// n x n matrices, together with an Ad-invariant positive definite form B.
///
/// The basis need not be B-orthonormal; gram_B() carries the geometry. The
/// object is immutable after build() and safe to share across threads.
class MatrixLieAlgebra {
 public:
  static std::shared_ptr<const MatrixLieAlgebra> build(std::vector<Eigen::MatrixXcd> basis,
                                                       FormKind form, double tol_alg = 1e-9);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }
  FormKind form_kind() const { return form_; }
  double tol_alg() const { return tol_alg_; }
  const Eigen::MatrixXd& gram_B() const { return gram_; }

  // c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k.
  double structure_constant(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return ad_basis_[static_cast<std::size_t>(i)](k, j);
  }
  // ad(b_i) in coefficients.
  const Eigen::MatrixXd& ad_basis(Eigen::Index i) const {
    return ad_basis_[static_cast<std::size_t>(i)];
  }

  Eigen::MatrixXcd to_matrix(const AlgebraVector& a) const;
  Decomposition decompose(const Eigen::MatrixXcd& m) const;
  // Throws NotInAlgebra when the residual exceeds `tol` (default 100 tol_alg).
  AlgebraVector to_coeffs(const Eigen::MatrixXcd& m, double tol = -1.0) const;

  AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b) const;
  Eigen::MatrixXd ad_matrix(const AlgebraVector& a) const;
  // The invariant form B and its norm.
  double inner(const AlgebraVector& a, const AlgebraVector& b) const { return a.dot(gram_ * b); }
  double norm(const AlgebraVector& a) const;

  GroupElement group_exp(const AlgebraVector& a, double t = 1.0) const;
  // Principal logarithm; requires ||g - I|| <= 0.5.
  AlgebraVector group_log(const GroupElement& g, double tol = -1.0) const;
  // Ad(g) a = g a g^{-1}.
  AlgebraVector adjoint(const GroupElement& g, const AlgebraVector& a, double tol = -1.0) const;

  // Max over basis triples of |B([x,y],z) + B(y,[x,z])|.
  double ad_skew_residual() const;
  // Max over basis triples of ||[x,[y,z]] + [y,[z,x]] + [z,[x,y]]||_B.
  double jacobi_residual() const;
  // Max entrywise gap between stored constants and fresh matrix commutators.
  double structure_constant_residual() const;

  AlgebraVector zero() const { return AlgebraVector::Zero(dim()); }
  AlgebraVector unit(Eigen::Index i) const { return AlgebraVector::Unit(dim(), i); }

  static constexpr double kLogWindow = 0.5;

 private:
  MatrixLieAlgebra() = default;

  Eigen::VectorXd flatten(const Eigen::MatrixXcd& m) const;

  Eigen::Index ambient_dim_ = 0;
  std::vector<Eigen::MatrixXcd> basis_;
  FormKind form_ = FormKind::NegKilling;
  double tol_alg_ = 1e-9;
  Eigen::MatrixXd flat_basis_;  // 2n^2 x d real embedding of the basis
  Eigen::MatrixXd pinv_;        // left inverse of flat_basis_
  std::vector<Eigen::MatrixXd> ad_basis_;
  Eigen::MatrixXd gram_;
};

using AlgebraPtr = std::shared_ptr<const MatrixLieAlgebra>;

}  // namespace twostep
