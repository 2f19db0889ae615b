#include "twostep/homogeneous_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twostep/errors.hpp"

namespace twostep {

HomogeneousSpace::HomogeneousSpace(Subspace k, std::vector<Subspace> split, std::vector<double> lambdas,
                                   std::string name, std::optional<std::string> degeneracy)
    : k_(std::move(k)),
      split_(std::move(split)),
      lambdas_(std::move(lambdas)),
      name_(std::move(name)),
      degeneracy_(std::move(degeneracy)) {
  if (!k_.algebra()) throw Error(ErrorKind::BadInput, "isotropy subspace has no algebra");
  if (split_.empty()) throw Error(ErrorKind::DegenerateSplit, "split of m has no members");
  if (lambdas_.size() != split_.size()) {
    throw Error(ErrorKind::BadInput, "expected " + std::to_string(split_.size()) + " lambdas, got " +
                                         std::to_string(lambdas_.size()));
  }
  for (double l : lambdas_) {
    if (!(std::isfinite(l) && l > 0.0)) {
      std::ostringstream os;
      os << "lambda must be a positive real, got " << l;
      throw Error(ErrorKind::BadInput, os.str());
    }
  }
  m_ = orthocomplement(k_, "m");
  const double tol = tol_alg();
  Eigen::Index total = 0;
  for (const auto& member : split_) {
    if (member.algebra() != k_.algebra()) {
      throw Error(ErrorKind::BadInput, "split member '" + member.label() + "' belongs to another algebra");
    }
    if (member.empty()) {
      throw Error(ErrorKind::DegenerateSplit, "split member '" + member.label() + "' has dimension 0");
    }
    for (Eigen::Index j = 0; j < member.dim(); ++j) {
      if (k_.algebra()->norm(k_.project(member.vector(j))) > 100.0 * tol) {
        throw Error(ErrorKind::NotInM, "split member '" + member.label() + "' has a component along k");
      }
    }
    total += member.dim();
  }
  if (total != m_.dim()) {
    throw Error(ErrorKind::BadInput, "split dimensions sum to " + std::to_string(total) + " but dim m = " +
                                         std::to_string(m_.dim()));
  }
  precompute();
}

void HomogeneousSpace::precompute() {
  const auto& alg = algebra();
  const Eigen::MatrixXd& gram = alg->gram_B();
  metric_op_ = Eigen::MatrixXd::Zero(alg->dim(), alg->dim());
  for (std::size_t i = 0; i < split_.size(); ++i) {
    const Eigen::MatrixXd& q = split_[i].basis();
    metric_op_ += lambdas_[i] * q * q.transpose() * gram;
  }
  const Eigen::MatrixXd& qm = m_.basis();
  const Eigen::MatrixXd mg = qm.transpose() * gram * metric_op_ * qm;
  gram_ldlt_.compute(0.5 * (mg + mg.transpose()));
  ad_m_basis_.clear();
  for (Eigen::Index j = 0; j < m_.dim(); ++j) ad_m_basis_.push_back(alg->ad_matrix(m_.vector(j)));
}

HomogeneousSpace HomogeneousSpace::with_lambdas(std::vector<double> lambdas) const {
  return HomogeneousSpace(k_, split_, std::move(lambdas), name_, degeneracy_);
}

HomogeneousSpace HomogeneousSpace::with_name(std::string name) const {
  HomogeneousSpace out = *this;
  out.name_ = std::move(name);
  return out;
}

Eigen::VectorXd HomogeneousSpace::split_coords(const AlgebraVector& x) const {
  Eigen::VectorXd out(m_.dim());
  Eigen::Index off = 0;
  for (const auto& member : split_) {
    out.segment(off, member.dim()) = member.coords(x);
    off += member.dim();
  }
  return out;
}

AlgebraVector HomogeneousSpace::from_split_coords(const Eigen::VectorXd& c) const {
  if (c.size() != m_.dim()) {
    throw Error(ErrorKind::BadInput, "expected " + std::to_string(m_.dim()) + " coordinates on m, got " +
                                         std::to_string(c.size()));
  }
  AlgebraVector out = algebra()->zero();
  Eigen::Index off = 0;
  for (const auto& member : split_) {
    out += member.from_coords(c.segment(off, member.dim()));
    off += member.dim();
  }
  return out;
}

void HomogeneousSpace::require_in_m(const AlgebraVector& x) const {
  const double along_k = algebra()->norm(k_.project(x));
  if (along_k > tol_alg() * std::max(1.0, algebra()->norm(x))) {
    std::ostringstream os;
    os << "vector has a k-component of B-norm " << along_k;
    throw Error(ErrorKind::NotInM, os.str());
  }
}

double HomogeneousSpace::deformed_inner(const AlgebraVector& x, const AlgebraVector& y) const {
  require_in_m(x);
  require_in_m(y);
  return (metric_op_ * x).dot(algebra()->gram_B() * y);
}

double HomogeneousSpace::deformed_norm(const AlgebraVector& x) const {
  return std::sqrt(std::max(0.0, deformed_inner(x, x)));
}

MetricOnM HomogeneousSpace::metric() const {
  const Eigen::MatrixXd& qm = m_.basis();
  MetricOnM out;
  out.gram = qm.transpose() * algebra()->gram_B() * metric_op_ * qm;
  out.lambdas = lambdas_;
  return out;
}

AlgebraVector HomogeneousSpace::nomizu_U(const AlgebraVector& x, const AlgebraVector& y) const {
  require_in_m(x);
  require_in_m(y);
  const Eigen::MatrixXd& gram = algebra()->gram_B();
  // <[z,x]_m, y> = B([z,x], A y) because A y already lies in m.
  const AlgebraVector gay = gram * (metric_op_ * y);
  const AlgebraVector gax = gram * (metric_op_ * x);
  Eigen::VectorXd rhs(m_.dim());
  for (Eigen::Index j = 0; j < m_.dim(); ++j) {
    const Eigen::MatrixXd& ad = ad_m_basis_[static_cast<std::size_t>(j)];
    rhs(j) = (ad * x).dot(gay) + (ad * y).dot(gax);
  }
  const Eigen::VectorXd u = gram_ldlt_.solve(0.5 * rhs);
  return m_.from_coords(u);
}

double HomogeneousSpace::nomizu_system_residual(const AlgebraVector& x, const AlgebraVector& y,
                                                const AlgebraVector& u) const {
  const auto& alg = algebra();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m_.dim(); ++j) {
    const AlgebraVector z = m_.vector(j);
    const double lhs = 2.0 * deformed_inner(u, z);
    const double rhs = deformed_inner(project_m(alg->bracket(z, x)), y) +
                       deformed_inner(x, project_m(alg->bracket(z, y)));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst / std::max(1.0, alg->norm(x) * alg->norm(y));
}

CheckEntry HomogeneousSpace::check_k_subalgebra() const {
  return CheckEntry::make("k_subalgebra", bracket_inclusion_residual(k_, k_, k_), tol_alg(),
                          "bracket closure of k");
}

CheckEntry HomogeneousSpace::check_k_m_orthogonality() const {
  return CheckEntry::make("k_m_orthogonality", k_.orthogonality_residual(m_), tol_alg(), "max |B(k_i, m_j)|");
}

CheckEntry HomogeneousSpace::check_split_orthogonality() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < split_.size(); ++i) {
    for (std::size_t j = i + 1; j < split_.size(); ++j) {
      worst = std::max(worst, split_[i].orthogonality_residual(split_[j]));
    }
  }
  return CheckEntry::make("split_orthogonality", worst, tol_alg(), "max |B(u, v)| across split members");
}

CheckEntry HomogeneousSpace::check_ad_K_invariance() const {
  double worst = 0.0;
  for (const auto& member : split_) worst = std::max(worst, bracket_inclusion_residual(k_, member, member));
  return CheckEntry::make("ad_k_invariance", worst, tol_alg(),
                          "[k, m_i] in m_i at the algebra level (K assumed connected)");
}

CheckEntry HomogeneousSpace::check_natural_reductivity(bool use_deformed) const {
  const auto& alg = algebra();
  const Eigen::MatrixXd& q = m_.basis();
  // h(u, v) is B(u, v) or B(u, A v); both see only the m-part of u when v is in m.
  const Eigen::MatrixXd h = use_deformed ? Eigen::MatrixXd(alg->gram_B() * metric_op_) : alg->gram_B();
  double worst = 0.0;
  for (Eigen::Index x = 0; x < m_.dim(); ++x) {
    const Eigen::MatrixXd adx = alg->ad_matrix(q.col(x));
    // n(y, z) = h([X, Y], Z)
    const Eigen::MatrixXd n = (adx * q).transpose() * h * q;
    worst = std::max(worst, (n + n.transpose()).cwiseAbs().maxCoeff());
  }
  return CheckEntry::make(use_deformed ? "natural_reductivity_deformed" : "natural_reductivity", worst,
                          tol_alg(), "B([X,Y]_m, Z) + B(Y, [X,Z]_m) on basis triples of m");
}

CheckEntry HomogeneousSpace::check_bracket_inclusion(std::size_t a, std::size_t b) const {
  const double r = bracket_inclusion_residual(split_.at(a), split_.at(b), split_.at(a));
  return CheckEntry::make("bracket_inclusion[" + split_[a].label() + "," + split_[b].label() + "]", r, tol_alg(),
                          "[m_a, m_b] in m_a");
}

std::vector<CheckEntry> HomogeneousSpace::structural_checks() const {
  std::vector<CheckEntry> out{check_k_subalgebra(), check_k_m_orthogonality(), check_split_orthogonality(),
                              check_ad_K_invariance(), check_natural_reductivity()};
  if (s() >= 2) {
    CheckEntry inc = check_bracket_inclusion(0, 1);
    inc.name = "bracket_inclusion";
    out.push_back(inc);
  }
  return out;
}

}  // namespace twostep
