#include "twostep/catalog.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "twostep/errors.hpp"
#include "twostep/standard_algebras.hpp"

namespace twostep {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "-" : "") + std::to_string(v[i]);
  return out;
}

void require_lambda(double lambda) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw Error(ErrorKind::BadInput, "lambda must be a positive real, got " + fmt(lambda));
  }
}

HomogeneousSpace certified(HomogeneousSpace space) {
  for (const CheckEntry& c : space.structural_checks()) {
    if (!c.pass) {
      std::ostringstream os;
      os << space.name() << ": " << c.name << " fails (residual " << c.max_residual << ")";
      throw Error(ErrorKind::ConditionViolated, os.str());
    }
  }
  return space;
}

HomogeneousSpace two_part_or_degenerate(const Subspace& k, const Subspace& m1, const Subspace& m2,
                                        double lambda, const std::string& name, const std::string& why) {
  if (m1.empty() || m2.empty()) {
    const Subspace whole = direct_sum({m1.empty() ? m2 : m1}, "m");
    return certified(HomogeneousSpace(k, {whole}, {1.0}, name, why));
  }
  return certified(HomogeneousSpace(k, {m1, m2}, {1.0, lambda}, name));
}

}  // namespace

HomogeneousSpace hopf_sphere(int n, double lambda) {
  if (n < 1) throw Error(ErrorKind::BadInput, "hopf: n must be at least 1");
  require_lambda(lambda);
  const Eigen::Index N = n + 1;
  const AlgebraPtr alg = make_u(N, FormKind::NegTrace);
  std::vector<AlgebraVector> k, m1;
  for (Eigen::Index p = 0; p < N; ++p) {
    for (Eigen::Index q = p + 1; q < N; ++q) {
      const Eigen::Index idx = root_pair_index(N, p, q);
      auto& dst = (q == N - 1) ? m1 : k;
      dst.push_back(alg->unit(idx));
      dst.push_back(alg->unit(idx + 1));
    }
  }
  for (Eigen::Index p = 0; p + 1 < N; ++p) k.push_back(alg->unit(diagonal_offset(N) + p));
  const AlgebraVector fibre = alg->unit(diagonal_offset(N) + N - 1);
  std::vector<Subspace> split{Subspace::span(alg, m1, "m1"),
                              Subspace::span(alg, std::vector<AlgebraVector>{fibre}, "m2")};
  return certified(HomogeneousSpace(Subspace::span(alg, k, "k"), std::move(split), {1.0, lambda}, "hopf:n=" + std::to_string(n) + ",lambda=" + fmt(lambda)));
}

HomogeneousSpace group_as_space(const AlgebraPtr& algebra, const Subspace& k_sub, double lambda,
                                std::string name) {
  require_lambda(lambda);
  if (k_sub.empty()) throw Error(ErrorKind::DegenerateSplit, "k_sub = {0} leaves no deformation axis");
  const double r = bracket_inclusion_residual(k_sub, k_sub, k_sub);
  if (r > algebra->tol_alg()) {
    throw Error(ErrorKind::ConditionViolated, "k_sub is not a subalgebra (residual " + fmt(r) + ")");
  }
  const Subspace m = orthocomplement(k_sub, "m1");
  if (m.empty()) throw Error(ErrorKind::DegenerateSplit, "k_sub = g leaves no complement");
  return certified(
      HomogeneousSpace(Subspace::zero(algebra, "k"), {m, k_sub.relabeled("m2")}, {1.0, lambda}, std::move(name)));
}

HomogeneousSpace su2_berger(double lambda) {
  require_lambda(lambda);
  const AlgebraPtr alg = make_su(2, FormKind::NegKilling);
  return group_as_space(alg, Subspace::span(alg, std::vector<AlgebraVector>{alg->unit(2)}, "k_sub"), lambda,
                        "su2-berger:lambda=" + fmt(lambda));
}

HomogeneousSpace u2_center(double lambda) {
  require_lambda(lambda);
  const AlgebraPtr alg = make_u(2, FormKind::NegTrace);
  const AlgebraVector centre = alg->unit(diagonal_offset(2)) + alg->unit(diagonal_offset(2) + 1);
  return group_as_space(alg, Subspace::span(alg, std::vector<AlgebraVector>{centre}, "k_sub"), lambda, "u2-center:lambda=" + fmt(lambda));
}

HomogeneousSpace flag_su(const std::vector<int>& partition, int i0, double lambda) {
  require_lambda(lambda);
  if (partition.size() < 2) throw Error(ErrorKind::BadInput, "flag-su: partition needs at least two blocks");
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  const AlgebraPtr alg = make_su(n, FormKind::NegKilling);
  const RootDatum datum = type_a_flag_datum(alg, partition);
  const ParitySplit split = root_parity_split(datum, i0);

  std::vector<AlgebraVector> k;
  for (Eigen::Index j = 0; j < n - 1; ++j) k.push_back(alg->unit(diagonal_offset(n) + j));
  for (std::size_t r = 0; r < datum.positive_roots.size(); ++r) {
    if (datum.in_m(r)) continue;
    for (Eigen::Index j = 0; j < datum.realization[r].dim(); ++j) k.push_back(datum.realization[r].vector(j));
  }
  const std::string name =
      "flag-su:partition=" + join(partition) + ",i0=" + std::to_string(i0) + ",lambda=" + fmt(lambda);
  return two_part_or_degenerate(Subspace::span(alg, k, "k"), split.m1, split.m2, lambda, name,
                                "every root of R_M^+ has odd c_i0: m2 = {0}");
}

HomogeneousSpace wallach_su3(int l, double lambda) {
  require_lambda(lambda);
  if (l < 1 || l > 3) throw Error(ErrorKind::BadInput, "wallach-su3: l must be 1, 2 or 3");
  const AlgebraPtr alg = make_su(3, FormKind::NegKilling);
  const Subspace k = Subspace::span(alg, std::vector<AlgebraVector>{alg->unit(6), alg->unit(7)}, "k");
  const std::pair<int, int> roots[3] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<Subspace> modules;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Index idx = root_pair_index(3, roots[i].first, roots[i].second);
    modules.push_back(Subspace::span(alg, std::vector<AlgebraVector>{alg->unit(idx), alg->unit(idx + 1)}, "n" + std::to_string(i + 1)));
  }
  for (const auto& ni : modules) {
    const double r = bracket_inclusion_residual(ni, ni, k);
    if (r > alg->tol_alg()) throw Error(ErrorKind::ConditionViolated, "[" + ni.label() + ", " + ni.label() + "] not in k");
  }
  std::vector<Subspace> rest;
  for (int i = 0; i < 3; ++i) {
    if (i != l - 1) rest.push_back(modules[static_cast<std::size_t>(i)]);
  }
  const Subspace m1 = direct_sum(rest, "m1");
  const Subspace m2 = modules[static_cast<std::size_t>(l - 1)].relabeled("m2");
  return certified(HomogeneousSpace(k, {m1, m2}, {1.0, lambda},
                                    "wallach-su3:l=" + std::to_string(l) + ",lambda=" + fmt(lambda)));
}

double GradedDecomposition::grading_residual() const {
  double worst = 0.0;
  const AlgebraPtr& alg = components.front().algebra();
  auto comp = [&](int j) -> const Subspace& { return components.at(static_cast<std::size_t>(j)); };
  for (int i = 0; i <= t; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int hi = (i + j <= t) ? i + j : order - (i + j);
      std::vector<AlgebraVector> vs;
      for (const Subspace* p : {&comp(hi), &comp(i - j)}) {
        for (Eigen::Index c = 0; c < p->dim(); ++c) vs.push_back(p->vector(c));
      }
      worst = std::max(worst, bracket_inclusion_residual(comp(i), comp(j), Subspace::span(alg, vs, "target")));
    }
  }
  return worst;
}

GradedDecomposition k_symmetric_grading(int n, const std::vector<int>& exponents, int order) {
  if (n < 2) throw Error(ErrorKind::BadInput, "ksym-su: n must be at least 2");
  if (static_cast<int>(exponents.size()) != n) {
    throw Error(ErrorKind::BadInput, "ksym-su: expected " + std::to_string(n) + " exponents");
  }
  if (order < 2 || order % 2 != 0) throw Error(ErrorKind::BadInput, "ksym-su: k must be even and at least 2");
  const AlgebraPtr alg = make_su(n, FormKind::NegKilling);
  const Eigen::Index d = alg->dim();

  const std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / order);
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < n; ++p) D(p, p) = std::pow(zeta, exponents[static_cast<std::size_t>(p)]);
  const GroupElement g{D};
  Eigen::MatrixXd phi(d, d), phi_inv(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    phi.col(j) = alg->adjoint(g, alg->unit(j));
    phi_inv.col(j) = alg->adjoint(g.inverse(), alg->unit(j));
  }

  GradedDecomposition out;
  out.order = order;
  out.t = order / 2;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < order; ++i) power = phi * power;
  out.order_residual = (power - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (out.order_residual > alg->tol_alg() * 100.0) {
    throw Error(ErrorKind::ConditionViolated, "phi^k != id (residual " + fmt(out.order_residual) + ")");
  }

  Eigen::Index total = 0;
  for (int j = 0; j <= out.t; ++j) {
    const double c = 2.0 * std::cos(2.0 * std::numbers::pi * j / order);
    const Eigen::MatrixXd op = phi + phi_inv - c * Eigen::MatrixXd::Identity(d, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<AlgebraVector> kernel;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (sv(i) <= 1e-9) kernel.push_back(svd.matrixV().col(i));
    }
    out.components.push_back(Subspace::span(alg, kernel, "n" + std::to_string(j)));
    total += out.components.back().dim();
  }
  if (total != d) throw Error(ErrorKind::ConditionViolated, "eigenspaces of phi do not span su(n)");

  std::vector<AlgebraVector> odd, even;
  for (int j = 1; j <= out.t; ++j) {
    const Subspace& c = out.components[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < c.dim(); ++i) (j % 2 == 1 ? odd : even).push_back(c.vector(i));
  }
  out.m1 = Subspace::span(alg, odd, "m1");
  out.m2 = Subspace::span(alg, even, "m2");
  return out;
}

HomogeneousSpace k_symmetric_su(int n, const std::vector<int>& exponents, int order, double lambda) {
  require_lambda(lambda);
  const GradedDecomposition grading = k_symmetric_grading(n, exponents, order);
  if (grading.m1.empty() && grading.m2.empty()) {
    throw Error(ErrorKind::ConditionViolated, "ksym-su: phi = id, so k = g and m = {0}");
  }
  const double r = grading.grading_residual();
  if (r > grading.components.front().algebra()->tol_alg()) {
    throw Error(ErrorKind::ConditionViolated, "ksym-su: grading relations fail (residual " + fmt(r) + ")");
  }
  const std::string name = "ksym-su:n=" + std::to_string(n) + ",exp=" + join(exponents) +
                           ",k=" + std::to_string(order) + ",lambda=" + fmt(lambda);
  return two_part_or_degenerate(grading.components.front().relabeled("k"), grading.m1, grading.m2, lambda, name,
                                grading.m2.empty() ? "no even components: m2 = {0} (symmetric case)"
                                                   : "no odd components: m1 = {0}");
}

}  // namespace twostep
