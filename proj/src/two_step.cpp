#include "twostep/two_step.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twostep/errors.hpp"

namespace twostep {

namespace {

TwoStepCurve build(SpacePtr space, std::size_t a, std::size_t b, AlgebraVector Xa, AlgebraVector Xb,
                   bool check_condition) {
  if (!space) throw Error(ErrorKind::BadInput, "curve without a space");
  if (a >= space->s() || b >= space->s() || a == b) {
    std::ostringstream os;
    os << "invalid summand pair (" << a << ", " << b << ") for a split with " << space->s() << " members";
    throw Error(ErrorKind::BadInput, os.str());
  }
  const double tol = space->tol_alg();
  const Subspace& ma = space->member(a);
  const Subspace& mb = space->member(b);
  if (ma.distance_ratio(Xa) > tol) throw Error(ErrorKind::NotInM, "X_a does not lie in " + ma.label());
  if (mb.distance_ratio(Xb) > tol) throw Error(ErrorKind::NotInM, "X_b does not lie in " + mb.label());
  if (check_condition) {
    const double r = bracket_inclusion_residual(ma, mb, ma);
    if (r > tol) {
      std::ostringstream os;
      os << "[" << ma.label() << ", " << mb.label() << "] is not contained in " << ma.label() << " (residual " << r
         << ")";
      throw Error(ErrorKind::ConditionViolated, os.str());
    }
  }
  TwoStepCurve c;
  c.a_index = a;
  c.b_index = b;
  c.lambda = space->lambdas()[b] / space->lambdas()[a];
  c.Xa = std::move(Xa);
  c.Xb = std::move(Xb);
  c.X = c.Xa + c.lambda * c.Xb;
  c.Y = (1.0 - c.lambda) * c.Xb;
  c.space = std::move(space);
  return c;
}

}  // namespace

TwoStepCurve TwoStepCurve::make(SpacePtr space, std::size_t a, std::size_t b, AlgebraVector Xa, AlgebraVector Xb) {
  return build(std::move(space), a, b, std::move(Xa), std::move(Xb), true);
}

TwoStepCurve TwoStepCurve::unchecked(SpacePtr space, std::size_t a, std::size_t b, AlgebraVector Xa,
                                     AlgebraVector Xb) {
  return build(std::move(space), a, b, std::move(Xa), std::move(Xb), false);
}

GroupElement curve_point(const TwoStepCurve& c, double t) {
  const auto& alg = c.space->algebra();
  return alg->group_exp(c.X, t) * alg->group_exp(c.Y, t);
}

BodyVelocity body_velocity(const TwoStepCurve& c, double t) {
  const auto& alg = c.space->algebra();
  const GroupElement back = alg->group_exp(c.Y, -t);
  BodyVelocity v;
  v.t = t;
  v.Ya = alg->adjoint(back, c.Xa);
  v.TXb = alg->adjoint(back, c.Xb);
  const AlgebraVector tx = v.Ya + c.lambda * v.TXb;
  v.w = tx + c.Y;
  v.x_m = c.space->project_m(v.w);
  v.kappa = c.space->project_k(v.w);
  v.w_dot = alg->bracket(tx, c.Y);
  return v;
}

KoszulTerms koszul_terms(const TwoStepCurve& c, double t, const AlgebraVector& Z) {
  return koszul_terms(c, body_velocity(c, t), Z);
}

KoszulTerms koszul_terms(const TwoStepCurve& c, const BodyVelocity& v, const AlgebraVector& Z) {
  const HomogeneousSpace& sp = *c.space;
  sp.require_in_m(Z);
  const auto& alg = sp.algebra();
  const AlgebraVector br = sp.project_m(alg->bracket(v.Ya, c.Xb));
  const double la = sp.lambdas()[c.a_index];
  const double lb = sp.lambdas()[c.b_index];
  const double bz = alg->inner(Z, br);
  KoszulTerms k;
  k.T1 = (1.0 - c.lambda) * la * bz;
  k.T2 = (c.lambda - 1.0) * la * bz;
  k.T3 = 2.0 * bz * (c.lambda * la - lb);
  k.scale = std::max({1.0, c.lambda, la, lb}) * std::max(1.0, alg->norm(Z) * alg->norm(br));
  return k;
}

KoszulTerms koszul_terms_direct(const TwoStepCurve& c, double t, const AlgebraVector& Z) {
  return koszul_terms_direct(c, body_velocity(c, t), Z);
}

KoszulTerms koszul_terms_direct(const TwoStepCurve& c, const BodyVelocity& v, const AlgebraVector& Z) {
  const HomogeneousSpace& sp = *c.space;
  sp.require_in_m(Z);
  const auto& alg = sp.algebra();
  const AlgebraVector tx = v.Ya + c.lambda * v.TXb;
  const AlgebraVector vel = v.Ya + c.Xb;
  KoszulTerms k;
  k.T1 = sp.deformed_inner(sp.project_m(alg->bracket(tx, c.Y)), Z);
  k.T2 = sp.deformed_inner(vel, sp.project_m(alg->bracket(Z, c.Y)));
  k.T3 = 2.0 * sp.deformed_inner(sp.project_m(alg->bracket(tx, Z)), vel);
  const double la = sp.lambdas()[c.a_index];
  const double lb = sp.lambdas()[c.b_index];
  k.scale = std::max({1.0, c.lambda, la, lb}) * std::max(1.0, alg->norm(Z) * alg->norm(tx) * alg->norm(vel));
  return k;
}

AlgebraVector geodesic_defect(const TwoStepCurve& c, double t) {
  const HomogeneousSpace& sp = *c.space;
  const auto& alg = sp.algebra();
  const BodyVelocity v = body_velocity(c, t);
  return sp.project_m(v.w_dot) + sp.project_m(alg->bracket(v.kappa, v.x_m)) + sp.nomizu_U(v.x_m, v.x_m);
}

double one_step_gap(const TwoStepCurve& c, double t) {
  const auto& alg = c.space->algebra();
  const GroupElement two = curve_point(c, t);
  const GroupElement one = alg->group_exp(c.Xa + c.Xb, t);
  return (two.matrix - one.matrix).cwiseAbs().maxCoeff();
}

}  // namespace twostep
