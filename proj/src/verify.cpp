#include "twostep/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "twostep/errors.hpp"
#include "twostep/geodesic_ode.hpp"

namespace twostep {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

AlgebraVector random_in(const Subspace& sub, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd c(sub.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  if (c.norm() == 0.0) return sub.algebra()->zero();
  return sub.from_coords(c * (radius * uniform(rng) / c.norm()));
}

std::pair<AlgebraVector, AlgebraVector> random_unit_velocity(const HomogeneousSpace& space, std::size_t a,
                                                             std::size_t b, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const Subspace& ma = space.member(a);
  const Subspace& mb = space.member(b);
  for (;;) {
    Eigen::VectorXd ca(ma.dim()), cb(mb.dim());
    for (Eigen::Index i = 0; i < ca.size(); ++i) ca(i) = normal(rng);
    for (Eigen::Index i = 0; i < cb.size(); ++i) cb(i) = normal(rng);
    const AlgebraVector xa = ma.from_coords(ca);
    const AlgebraVector xb = mb.from_coords(cb);
    const double len = space.deformed_norm(xa + xb);
    if (len > 1e-12) return {xa / len, xb / len};
  }
}

double lemma_invariance_residual(const HomogeneousSpace& space, std::size_t a, std::size_t b, int samples,
                                 std::uint64_t seed) {
  const auto& alg = space.algebra();
  const Subspace& ma = space.member(a);
  const Subspace& mb = space.member(b);
  std::mt19937_64 rng = trial_rng(seed, 0x1e44a);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const AlgebraVector u = random_in(mb, 2.0, rng);
    const AlgebraVector v = random_in(ma, 2.0, rng);
    const AlgebraVector moved = alg->adjoint(alg->group_exp(u), v);
    worst = std::max(worst, alg->norm(moved - ma.project(moved)) / std::max(1.0, alg->norm(v)));
  }
  return worst;
}

namespace {

struct TrialResult {
  double koszul_sum = 0.0;
  double koszul_t3 = 0.0;
  double koszul_direct = 0.0;
  double defect = 0.0;
  double speed = 0.0;
  double ya_in_ma = 0.0;
  double fixed_xb = 0.0;
  double oracle = 0.0;
  double oracle_speed = 0.0;
  double one_step = 0.0;
};

TrialResult run_trial(const SpacePtr& space, const VerifyOptions& opt, int trial, bool commuting) {
  const HomogeneousSpace& sp = *space;
  const auto& alg = sp.algebra();
  std::mt19937_64 rng = trial_rng(opt.seed, static_cast<std::uint64_t>(trial));
  auto [xa, xb] = random_unit_velocity(sp, opt.a_index, opt.b_index, rng);
  const TwoStepCurve c = TwoStepCurve::make(space, opt.a_index, opt.b_index, xa, xb);
  const Subspace& ma = sp.member(opt.a_index);
  const double speed0 = sp.deformed_norm(c.initial_velocity());

  TrialResult r;
  const int n = std::max(2, opt.t_samples);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
    const BodyVelocity v = body_velocity(c, t);
    r.ya_in_ma = std::max(r.ya_in_ma, ma.distance_ratio(v.Ya));
    r.fixed_xb = std::max(r.fixed_xb, alg->norm(v.TXb - c.Xb));
    r.speed = std::max(r.speed, std::abs(sp.deformed_norm(v.x_m) - speed0) / speed0);
    r.defect = std::max(r.defect, alg->norm(geodesic_defect(c, t)));
    for (Eigen::Index j = 0; j < sp.m().dim(); ++j) {
      const AlgebraVector z = sp.m().vector(j);
      const KoszulTerms k = koszul_terms(c, v, z);
      const KoszulTerms d = koszul_terms_direct(c, v, z);
      r.koszul_sum = std::max(r.koszul_sum, std::abs(k.sum()) / k.scale);
      r.koszul_t3 = std::max(r.koszul_t3, std::abs(k.T3) / k.scale);
      const double gap = std::max({std::abs(k.T1 - d.T1), std::abs(k.T2 - d.T2), std::abs(k.T3 - d.T3)});
      r.koszul_direct = std::max(r.koszul_direct, gap / std::max(k.scale, d.scale));
    }
  }

  if (opt.run_oracle && !opt.oracle_times.empty()) {
    const double t_end = *std::max_element(opt.oracle_times.begin(), opt.oracle_times.end());
    const GeodesicTrajectory traj =
        integrate_geodesic(sp, c.initial_velocity(), t_end, opt.oracle_step, 0.0, opt.tol.ode);
    r.oracle_speed = traj.max_speed_drift;
    for (double t : opt.oracle_times) {
      const auto it = std::min_element(traj.samples.begin(), traj.samples.end(), [t](const auto& p, const auto& q) {
        return std::abs(p.t - t) < std::abs(q.t - t);
      });
      try {
        r.oracle = std::max(r.oracle, coset_distance(curve_point(c, it->t), it->g, sp));
      } catch (const NumericalError&) {
        throw;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OutOfLogWindow) throw;
        throw NumericalError(e.kind(), "closed form and oracle diverged: " + e.detail(), it->t);
      }
    }
  }

  if (c.lambda == 1.0 || commuting) {
    for (double t : {0.5, 1.0, 2.0, std::numbers::pi}) r.one_step = std::max(r.one_step, one_step_gap(c, t));
  }
  return r;
}

}  // namespace

VerificationReport verify_two_step(const SpacePtr& space, const VerifyOptions& opt) {
  if (!space) throw Error(ErrorKind::BadInput, "no space");
  const HomogeneousSpace& sp = *space;
  if (opt.trials < 1) throw Error(ErrorKind::BadInput, "trials must be at least 1");
  if (sp.degenerate()) throw Error(ErrorKind::DegenerateSplit, *sp.degeneracy());
  if (sp.s() < 2) throw Error(ErrorKind::DegenerateSplit, "split has a single summand");

  const CheckEntry inclusion = sp.check_bracket_inclusion(opt.a_index, opt.b_index);
  if (!inclusion.pass) {
    std::ostringstream os;
    os << "[m_a, m_b] is not contained in m_a (residual " << inclusion.max_residual << ")";
    throw Error(ErrorKind::ConditionViolated, os.str());
  }
  const Subspace zero = Subspace::zero(sp.algebra(), "0");
  const double commute_residual =
      bracket_inclusion_residual(sp.member(opt.a_index), sp.member(opt.b_index), zero);
  const bool commuting = commute_residual <= opt.tol.alg;
  const double lambda = sp.lambdas()[opt.b_index] / sp.lambdas()[opt.a_index];

  std::vector<TrialResult> results(static_cast<std::size_t>(opt.trials));
  std::vector<std::exception_ptr> errors(results.size());
  unsigned workers = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(opt.trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < opt.trials; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = run_trial(space, opt, i, commuting);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrialResult worst;
  for (const auto& r : results) {
    worst.koszul_sum = std::max(worst.koszul_sum, r.koszul_sum);
    worst.koszul_t3 = std::max(worst.koszul_t3, r.koszul_t3);
    worst.koszul_direct = std::max(worst.koszul_direct, r.koszul_direct);
    worst.defect = std::max(worst.defect, r.defect);
    worst.speed = std::max(worst.speed, r.speed);
    worst.ya_in_ma = std::max(worst.ya_in_ma, r.ya_in_ma);
    worst.fixed_xb = std::max(worst.fixed_xb, r.fixed_xb);
    worst.oracle = std::max(worst.oracle, r.oracle);
    worst.oracle_speed = std::max(worst.oracle_speed, r.oracle_speed);
    worst.one_step = std::max(worst.one_step, r.one_step);
  }

  VerificationReport rep;
  rep.space = sp.name();
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  rep.assumed_connected = true;
  CheckEntry inc = inclusion;
  inc.name = "bracket_inclusion";
  rep.checks.push_back(inc);
  rep.checks.push_back(CheckEntry::make("koszul_identity", worst.koszul_sum, opt.tol.koszul,
                                        "|T1 + T2 + T3| / scale, closed forms"));
  rep.checks.push_back(
      CheckEntry::make("koszul_T3", worst.koszul_t3, opt.tol.koszul, "|T3| / scale, closed form"));
  rep.checks.push_back(CheckEntry::make("koszul_direct_agreement", worst.koszul_direct, 1e3 * opt.tol.koszul,
                                        "closed forms vs unsimplified bracket expressions"));
  rep.checks.push_back(CheckEntry::make("geodesic_defect", worst.defect, opt.tol.defect,
                                        "||w_dot_m + [kappa, x]_m + U(x, x)||_B via the connection operator"));
  rep.checks.push_back(CheckEntry::make("speed_constancy", worst.speed, opt.tol.speed,
                                        "relative drift of ||x_m(t)|| in the deformed metric"));
  rep.checks.push_back(CheckEntry::make("ad_invariance_along_curve", worst.ya_in_ma, opt.tol.alg,
                                        "Ad(exp(-tY)) X_a stays in m_a"));
  rep.checks.push_back(
      CheckEntry::make("fixed_Xb", worst.fixed_xb, opt.tol.alg, "Ad(exp(-tY)) X_b = X_b"));
  rep.checks.push_back(CheckEntry::make("lemma_ad_exp", lemma_invariance_residual(sp, opt.a_index, opt.b_index, 100, opt.seed),
                                        opt.tol.alg, "Ad(exp u) v in m_a for random u in m_b, v in m_a"));
  if (opt.run_oracle) {
    rep.checks.push_back(CheckEntry::make("oracle_coset_error", worst.oracle, opt.tol.ode,
                                          "closed form vs RK4 horizontal lift, coset distance"));
    rep.checks.push_back(CheckEntry::make("oracle_speed_drift", worst.oracle_speed, opt.tol.ode,
                                          "RK4 speed drift per unit time"));
  }
  if (lambda == 1.0) {
    rep.checks.push_back(CheckEntry::make("one_step_equal_lambdas", worst.one_step, 1e-12,
                                          "entrywise gap to exp(t(X_a + X_b))"));
  } else if (commuting) {
    rep.checks.push_back(CheckEntry::make("one_step_commuting", worst.one_step, opt.tol.alg,
                                          "entrywise gap to exp(t(X_a + X_b))"));
  }

  auto& cfg = rep.config;
  cfg["space"] = sp.name();
  cfg["lambdas"] = sp.lambdas();
  cfg["pair"] = {opt.a_index, opt.b_index};
  cfg["lambda_ratio"] = lambda;
  cfg["trials"] = opt.trials;
  cfg["t_samples"] = opt.t_samples;
  cfg["t_range"] = {0.0, 2.0 * std::numbers::pi};
  cfg["seed"] = opt.seed;
  cfg["tol_alg"] = opt.tol.alg;
  cfg["tol_ode"] = opt.tol.ode;
  cfg["tol_defect"] = opt.tol.defect;
  cfg["tol_koszul"] = opt.tol.koszul;
  cfg["tol_speed"] = opt.tol.speed;
  cfg["oracle"] = opt.run_oracle;
  cfg["oracle_step"] = opt.oracle_step;
  cfg["oracle_times"] = opt.oracle_times;
  cfg["commuting_pair"] = commuting;
  return rep;
}

}  // namespace twostep
