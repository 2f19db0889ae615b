#include "twostep/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "twostep/errors.hpp"

namespace twostep {

namespace {

// Modified Gram-Schmidt in the B inner product, each vector orthogonalized twice.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram, const std::vector<AlgebraVector>& vectors,
                               bool drop_dependent) {
  std::vector<AlgebraVector> kept;
  for (const auto& v : vectors) {
    const double original = std::sqrt(std::max(0.0, v.dot(gram * v)));
    if (original == 0.0) {
      if (drop_dependent) continue;
      throw Error(ErrorKind::BadInput, "zero vector in subspace basis");
    }
    AlgebraVector w = v / original;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) w -= q.dot(gram * w) * q;
    }
    const double len = std::sqrt(std::max(0.0, w.dot(gram * w)));
    if (len < 1e-8) {
      if (drop_dependent) continue;
      throw Error(ErrorKind::BadInput, "linearly dependent vectors in subspace basis");
    }
    kept.push_back(w / len);
  }
  Eigen::MatrixXd out(vectors.empty() ? 0 : vectors.front().size(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}

}  // namespace

Subspace Subspace::span(AlgebraPtr algebra, const std::vector<AlgebraVector>& vectors, std::string label,
                        bool drop_dependent) {
  for (const auto& v : vectors) {
    if (v.size() != algebra->dim()) {
      throw Error(ErrorKind::BadInput, "vector of length " + std::to_string(v.size()) +
                                           " in subspace '" + label + "', algebra has dimension " +
                                           std::to_string(algebra->dim()));
    }
  }
  Subspace s;
  s.basis_ = orthonormalize(algebra->gram_B(), vectors, drop_dependent);
  if (s.basis_.rows() == 0) s.basis_.resize(algebra->dim(), 0);
  s.algebra_ = std::move(algebra);
  s.label_ = std::move(label);
  return s;
}

Subspace Subspace::span(AlgebraPtr algebra, const Eigen::MatrixXd& columns, std::string label,
                        bool drop_dependent) {
  std::vector<AlgebraVector> vs;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) vs.push_back(columns.col(j));
  return span(std::move(algebra), vs, std::move(label), drop_dependent);
}

Subspace Subspace::zero(AlgebraPtr algebra, std::string label) {
  return span(std::move(algebra), std::vector<AlgebraVector>{}, std::move(label));
}

Subspace Subspace::whole(AlgebraPtr algebra, std::string label) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(algebra->dim(), algebra->dim());
  return span(std::move(algebra), id, std::move(label));
}

double Subspace::distance_ratio(const AlgebraVector& x) const {
  const AlgebraVector r = x - project(x);
  return algebra_->norm(r) / std::max(1.0, algebra_->norm(x));
}

double Subspace::orthogonality_residual(const Subspace& other) const {
  if (empty() || other.empty()) return 0.0;
  return (basis_.transpose() * algebra_->gram_B() * other.basis_).cwiseAbs().maxCoeff();
}

Subspace Subspace::relabeled(std::string label) const {
  Subspace s = *this;
  s.label_ = std::move(label);
  return s;
}

Subspace direct_sum(const std::vector<Subspace>& parts, std::string label) {
  if (parts.empty()) throw Error(ErrorKind::BadInput, "direct sum of no subspaces");
  std::vector<AlgebraVector> vs;
  for (const auto& p : parts) {
    for (Eigen::Index j = 0; j < p.dim(); ++j) vs.push_back(p.vector(j));
  }
  return Subspace::span(parts.front().algebra(), vs, std::move(label));
}

Subspace orthocomplement(const Subspace& k, std::string label) {
  const auto& alg = k.algebra();
  std::vector<AlgebraVector> vs;
  for (Eigen::Index j = 0; j < k.dim(); ++j) vs.push_back(k.vector(j));
  const Eigen::Index kept = k.dim();
  for (Eigen::Index i = 0; i < alg->dim(); ++i) vs.push_back(alg->unit(i));
  const Subspace all = Subspace::span(alg, vs, "tmp");
  std::vector<AlgebraVector> rest;
  for (Eigen::Index j = kept; j < all.dim(); ++j) rest.push_back(all.vector(j));
  return Subspace::span(alg, rest, std::move(label));
}

double bracket_inclusion_residual(const Subspace& a, const Subspace& c, const Subspace& target) {
  const auto& alg = a.algebra();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    const Eigen::MatrixXd ad = alg->ad_matrix(a.vector(i));
    for (Eigen::Index j = 0; j < c.dim(); ++j) {
      const AlgebraVector br = ad * c.vector(j);
      const AlgebraVector r = br - target.project(br);
      const double size = alg->norm(br);
      worst = std::max(worst, alg->norm(r) / (size > 1e-6 ? size : 1.0));
    }
  }
  return worst;
}

}  // namespace twostep
