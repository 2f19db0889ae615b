#include "twostep/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twostep/errors.hpp"
#include "twostep/matrix_functions.hpp"

namespace twostep {

const char* to_string(FormKind kind) {
  return kind == FormKind::NegKilling ? "neg_killing" : "neg_trace";
}

FormKind form_kind_from_string(const std::string& s) {
  if (s == "neg_killing") return FormKind::NegKilling;
  if (s == "neg_trace") return FormKind::NegTrace;
  throw Error(ErrorKind::BadInput, "unknown form kind '" + s + "' (expected neg_killing|neg_trace)");
}

GroupElement GroupElement::identity(Eigen::Index n) {
  return {Eigen::MatrixXcd::Identity(n, n)};
}

GroupElement GroupElement::inverse() const { return {matrix.inverse()}; }

double GroupElement::unitarity_residual() const {
  const auto n = matrix.rows();
  return (matrix * matrix.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Eigen::VectorXd MatrixLieAlgebra::flatten(const Eigen::MatrixXcd& m) const {
  const Eigen::Index nn = m.size();
  Eigen::VectorXd v(2 * nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    v(i) = m.data()[i].real();
    v(nn + i) = m.data()[i].imag();
  }
  return v;
}

std::shared_ptr<const MatrixLieAlgebra> MatrixLieAlgebra::build(std::vector<Eigen::MatrixXcd> basis,
                                                                 FormKind form, double tol_alg) {
  if (basis.empty()) throw Error(ErrorKind::BadInput, "algebra basis is empty");
  if (!(tol_alg > 0.0)) throw Error(ErrorKind::BadInput, "tol_alg must be positive");

  std::shared_ptr<MatrixLieAlgebra> alg(new MatrixLieAlgebra());
  alg->ambient_dim_ = basis.front().rows();
  alg->form_ = form;
  alg->tol_alg_ = tol_alg;
  const Eigen::Index n = alg->ambient_dim_;
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& m = basis[i];
    if (m.rows() != n || m.cols() != n) {
      std::ostringstream os;
      os << "basis matrix " << i << " is " << m.rows() << "x" << m.cols() << ", expected " << n << "x" << n;
      throw Error(ErrorKind::BadInput, os.str());
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m + m.adjoint()).cwiseAbs().maxCoeff() > tol_alg * scale) {
      throw Error(ErrorKind::NotAntiHermitian, "basis matrix " + std::to_string(i) + " is not anti-Hermitian");
    }
  }
  alg->basis_ = std::move(basis);

  alg->flat_basis_.resize(2 * n * n, d);
  for (Eigen::Index j = 0; j < d; ++j) alg->flat_basis_.col(j) = alg->flatten(alg->basis_[j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(alg->flat_basis_);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) <= 1e-10 * sv(0)) {
    throw Error(ErrorKind::NotLinearlyIndependent, "basis matrices are linearly dependent");
  }
  alg->pinv_ = alg->flat_basis_.completeOrthogonalDecomposition().pseudoInverse();

  alg->ad_basis_.assign(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::MatrixXcd c = alg->basis_[i] * alg->basis_[j] - alg->basis_[j] * alg->basis_[i];
      const Decomposition dec = alg->decompose(c);
      if (dec.residual > tol_alg) {
        std::ostringstream os;
        os << "[b_" << i << ", b_" << j << "] leaves the span (residual " << dec.residual << ")";
        throw Error(ErrorKind::NotClosed, os.str());
      }
      alg->ad_basis_[static_cast<std::size_t>(i)].col(j) = dec.coeffs;
    }
  }

  alg->gram_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double v = 0.0;
      if (form == FormKind::NegKilling) {
        v = -(alg->ad_basis_[i] * alg->ad_basis_[j]).trace();
      } else {
        v = -(alg->basis_[i] * alg->basis_[j]).trace().real();
      }
      alg->gram_(i, j) = alg->gram_(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(alg->gram_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (lo <= tol_alg * hi) {
    std::ostringstream os;
    os << "form " << to_string(form) << " is not positive definite on this algebra (min eigenvalue " << lo << ")";
    throw Error(ErrorKind::DegenerateForm, os.str());
  }
  return alg;
}

Eigen::MatrixXcd MatrixLieAlgebra::to_matrix(const AlgebraVector& a) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ambient_dim_, ambient_dim_);
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (a(i) != 0.0) m += a(i) * basis_[static_cast<std::size_t>(i)];
  }
  return m;
}

Decomposition MatrixLieAlgebra::decompose(const Eigen::MatrixXcd& m) const {
  const Eigen::VectorXd v = flatten(m);
  Decomposition out;
  out.coeffs = pinv_ * v;
  out.residual = (flat_basis_ * out.coeffs - v).norm() / std::max(1.0, v.norm());
  return out;
}

AlgebraVector MatrixLieAlgebra::to_coeffs(const Eigen::MatrixXcd& m, double tol) const {
  if (tol < 0.0) tol = 100.0 * tol_alg_;
  Decomposition dec = decompose(m);
  if (dec.residual > tol) {
    std::ostringstream os;
    os << "matrix leaves the algebra span (residual " << dec.residual << ")";
    throw Error(ErrorKind::NotInAlgebra, os.str());
  }
  return std::move(dec.coeffs);
}

Eigen::MatrixXd MatrixLieAlgebra::ad_matrix(const AlgebraVector& a) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (a(i) != 0.0) m += a(i) * ad_basis_[static_cast<std::size_t>(i)];
  }
  return m;
}

AlgebraVector MatrixLieAlgebra::bracket(const AlgebraVector& a, const AlgebraVector& b) const {
  AlgebraVector out = AlgebraVector::Zero(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (a(i) != 0.0) out.noalias() += a(i) * (ad_basis_[static_cast<std::size_t>(i)] * b);
  }
  return out;
}

double MatrixLieAlgebra::norm(const AlgebraVector& a) const {
  return std::sqrt(std::max(0.0, inner(a, a)));
}

GroupElement MatrixLieAlgebra::group_exp(const AlgebraVector& a, double t) const {
  return {expm(t * to_matrix(a))};
}

AlgebraVector MatrixLieAlgebra::group_log(const GroupElement& g, double tol) const {
  const auto n = g.matrix.rows();
  const double dist = operator_norm(g.matrix - Eigen::MatrixXcd::Identity(n, n));
  if (dist > kLogWindow) {
    std::ostringstream os;
    os << "||g - I|| = " << dist << " exceeds the log window " << kLogWindow;
    throw Error(ErrorKind::OutOfLogWindow, os.str());
  }
  return to_coeffs(logm(g.matrix), tol);
}

AlgebraVector MatrixLieAlgebra::adjoint(const GroupElement& g, const AlgebraVector& a, double tol) const {
  const Eigen::MatrixXcd m = g.matrix * to_matrix(a) * g.matrix.inverse();
  return to_coeffs(m, tol);
}

double MatrixLieAlgebra::ad_skew_residual() const {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < dim(); ++x) {
    const Eigen::MatrixXd& ad = ad_basis_[static_cast<std::size_t>(x)];
    // B(ad_x y, z) + B(y, ad_x z) for all y, z is the symmetric part of G ad_x.
    const Eigen::MatrixXd ga = gram_ * ad;
    worst = std::max(worst, (ga + ga.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double MatrixLieAlgebra::jacobi_residual() const {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < dim(); ++x) {
    for (Eigen::Index y = 0; y < dim(); ++y) {
      for (Eigen::Index z = 0; z < dim(); ++z) {
        const AlgebraVector ex = unit(x), ey = unit(y), ez = unit(z);
        const AlgebraVector j = bracket(ex, bracket(ey, ez)) + bracket(ey, bracket(ez, ex)) +
                                bracket(ez, bracket(ex, ey));
        worst = std::max(worst, norm(j));
      }
    }
  }
  return worst;
}

double MatrixLieAlgebra::structure_constant_residual() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    for (Eigen::Index j = 0; j < dim(); ++j) {
      const Eigen::MatrixXcd c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      const Eigen::MatrixXcd rebuilt = to_matrix(ad_basis_[static_cast<std::size_t>(i)].col(j));
      worst = std::max(worst, (c - rebuilt).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace twostep
