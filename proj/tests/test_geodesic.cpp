#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twostep/catalog.hpp"
#include "twostep/errors.hpp"
#include "twostep/geodesic_ode.hpp"
#include "twostep/standard_algebras.hpp"

using namespace twostep;
constexpr double kPi = std::numbers::pi;

namespace {

SpacePtr share(HomogeneousSpace s) { return std::make_shared<const HomogeneousSpace>(std::move(s)); }

TwoStepCurve random_curve(const SpacePtr& sp, std::uint64_t seed, std::size_t a = 0, std::size_t b = 1) {
  auto rng = trial_rng(seed, 0);
  auto [xa, xb] = random_unit_velocity(*sp, a, b, rng);
  return TwoStepCurve::make(sp, a, b, xa, xb);
}

double max_entry(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(TwoStepCurve, StartsAtTheIdentity) {
  const auto sp = share(hopf_sphere(1, 2.0));
  const TwoStepCurve c = random_curve(sp, 1);
  EXPECT_LE(max_entry(curve_point(c, 0.0).matrix - Eigen::MatrixXcd::Identity(2, 2)), 0.0);
  EXPECT_NEAR(c.lambda, 2.0, 0.0);
  EXPECT_LE((c.X - (c.Xa + 2.0 * c.Xb)).norm(), 0.0);
  EXPECT_LE((c.Y + c.Xb).norm(), 0.0);
}

TEST(TwoStepCurve, EqualLambdasGiveAOneParameterSubgroup) {
  const auto sp = share(hopf_sphere(2, 1.0));
  const TwoStepCurve c = random_curve(sp, 2);
  EXPECT_LE(c.Y.norm(), 0.0);
  for (double t : {0.3, 1.0, 2.0, kPi}) {
    EXPECT_LE(max_entry(curve_point(c, t).matrix - sp->algebra()->group_exp(c.Xa + c.Xb, t).matrix), 0.0);
  }
}

TEST(TwoStepCurve, CommutingSummandsGiveAOneParameterSubgroup) {
  const auto sp = share(u2_center(3.0));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const TwoStepCurve c = random_curve(sp, s);
    for (double t : {0.5, 1.0, 2.0, 5.0}) EXPECT_LE(one_step_gap(c, t), 1e-12);
  }
}

TEST(TwoStepCurve, MakeValidatesInputs) {
  const auto sp = share(hopf_sphere(1, 2.0));
  const AlgebraVector xa = sp->member(0).vector(0), xb = sp->member(1).vector(0);
  try {
    TwoStepCurve::make(sp, 0, 1, xb, xb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInM);
  }
  // Roles reversed: [m_2, m_1] is not contained in m_2.
  try {
    TwoStepCurve::make(sp, 1, 0, xb, xa);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConditionViolated);
  }
  EXPECT_NO_THROW(TwoStepCurve::unchecked(sp, 1, 0, xb, xa));
}

TEST(BodyVelocity, InitialValues) {
  const auto sp = share(wallach_su3(1, 3.0));
  const TwoStepCurve c = random_curve(sp, 4);
  const BodyVelocity v = body_velocity(c, 0.0);
  EXPECT_LE((v.w - (c.Xa + c.Xb)).norm(), 1e-15);
  EXPECT_LE((v.Ya - c.Xa).norm(), 1e-15);
}

TEST(BodyVelocity, EqualLambdasKeepYaFixed) {
  const auto sp = share(flag_su({1, 1, 1}, 1, 1.0));
  const TwoStepCurve c = random_curve(sp, 5);
  for (double t : {0.5, 1.0, 4.0}) EXPECT_LE((body_velocity(c, t).Ya - c.Xa).norm(), 1e-15);
}

TEST(BodyVelocity, HopfYaRotatesInsideMaWithConstantNorm) {
  const auto sp = share(hopf_sphere(1, 2.0));
  const TwoStepCurve c = random_curve(sp, 6);
  const auto& alg = sp->algebra();
  const double n0 = alg->norm(c.Xa);
  bool moved = false;
  for (int i = 0; i < 50; ++i) {
    const double t = 2.0 * kPi * i / 49.0;
    const BodyVelocity v = body_velocity(c, t);
    EXPECT_NEAR(alg->norm(v.Ya), n0, 1e-13);
    EXPECT_LE(sp->member(0).distance_ratio(v.Ya), 1e-13);
    EXPECT_LE(alg->norm(v.TXb - c.Xb), 1e-13);
    moved = moved || alg->norm(v.Ya - c.Xa) > 1e-3;
  }
  EXPECT_TRUE(moved);
}

TEST(Koszul, TermsCancel) {
  for (const auto& sp : {share(hopf_sphere(1, 2.0)), share(flag_su({1, 1, 1, 1}, 2, 5.0)), share(su2_berger(0.5))}) {
    proptest::Gen gen(7);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const TwoStepCurve c = random_curve(sp, s);
      for (double t : {0.0, 0.7, 2.0, 5.5}) {
        const AlgebraVector z = gen.in(sp->m(), 2.0);
        const KoszulTerms k = koszul_terms(c, t, z);
        const KoszulTerms d = koszul_terms_direct(c, t, z);
        EXPECT_LE(std::abs(k.sum()), 1e-12 * k.scale);
        EXPECT_LE(std::abs(k.T3), 1e-12 * k.scale);
        // The closed forms agree with the raw bracket expressions.
        EXPECT_NEAR(k.T1, d.T1, 1e-11 * d.scale);
        EXPECT_NEAR(k.T2, d.T2, 1e-11 * d.scale);
        EXPECT_NEAR(k.T3, d.T3, 1e-11 * d.scale);
        EXPECT_LE(std::abs(d.sum()), 1e-11 * d.scale);
      }
    }
  }
}

TEST(Koszul, EqualLambdasKillTheFirstTwoTerms) {
  const auto sp = share(wallach_su3(3, 1.0));
  const TwoStepCurve c = random_curve(sp, 9);
  proptest::Gen gen(9);
  const KoszulTerms k = koszul_terms(c, 1.3, gen.in(sp->m(), 1.0));
  EXPECT_EQ(k.T1, 0.0);
  EXPECT_EQ(k.T2, 0.0);
}

TEST(Koszul, ZOrthogonalToTheBracketKillsAllTerms) {
  const auto sp = share(hopf_sphere(1, 3.0));
  const TwoStepCurve c = random_curve(sp, 10);
  const double t = 0.9;
  const auto& alg = sp->algebra();
  const AlgebraVector br = sp->project_m(alg->bracket(body_velocity(c, t).Ya, c.Xb));
  ASSERT_GT(alg->norm(br), 1e-6);
  // Z = X_b lies in m_2, B-orthogonal to br in m_1.
  const KoszulTerms k = koszul_terms(c, t, c.Xb);
  EXPECT_LE(std::abs(k.T1) + std::abs(k.T2) + std::abs(k.T3), 1e-14);
}

TEST(GeodesicDefect, EqualLambdasAreGeodesic) {
  const auto sp = share(flag_su({1, 1, 1}, 1, 1.0));
  const TwoStepCurve c = random_curve(sp, 11);
  for (double t : {0.0, 0.5, 1.0, 2.0}) EXPECT_LE(sp->algebra()->norm(geodesic_defect(c, t)), 1e-8);
}

TEST(GeodesicDefect, ValidCurvesAreGeodesicOnEveryPreset) {
  const std::vector<SpacePtr> spaces{share(hopf_sphere(1, 5.0)), share(hopf_sphere(2, 0.5)),
                                     share(su2_berger(4.0)),    share(flag_su({1, 1, 1}, 2, 2.0)),
                                     share(wallach_su3(2, 3.0)), share(k_symmetric_su(3, {0, 1, 2}, 4, 2.0))};
  for (const auto& sp : spaces) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const TwoStepCurve c = random_curve(sp, 100 + s);
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        worst = std::max(worst, sp->algebra()->norm(geodesic_defect(c, 2.0 * kPi * i / 99.0)));
      }
      EXPECT_LE(worst, 1e-8) << sp->name();
    }
  }
}

TEST(GeodesicDefect, ViolatedConditionBreaksTheGeodesicProperty) {
  const auto sp = share(flag_su({1, 1, 1}, 1, 2.0));
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto rng = trial_rng(s, 1);
    auto [xb, xa] = random_unit_velocity(*sp, 1, 0, rng);
    const TwoStepCurve c = TwoStepCurve::unchecked(sp, 1, 0, xb, xa);
    for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, sp->algebra()->norm(geodesic_defect(c, t)));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(GeodesicOde, NaturallyReductiveCaseIsAOneParameterSubgroup) {
  const auto sp = share(wallach_su3(3, 1.0));
  proptest::Gen gen(12);
  const AlgebraVector v0 = gen.unit_in(sp->m());
  const GeodesicTrajectory traj = integrate_geodesic(*sp, v0, 2.0, 1e-3, 0.5);
  ASSERT_EQ(traj.samples.size(), 5u);
  for (const auto& s : traj.samples) {
    EXPECT_LE(coset_distance(sp->algebra()->group_exp(v0, s.t), s.g, *sp), 1e-6);
    EXPECT_LE(sp->algebra()->norm(s.x - v0), 1e-12);
  }
}

TEST(GeodesicOde, SpeedIsConserved) {
  const auto sp = share(hopf_sphere(1, 2.0));
  proptest::Gen gen(13);
  const AlgebraVector v0 = gen.in(sp->m(), 1.5);
  const GeodesicTrajectory traj = integrate_geodesic(*sp, v0, 2.0, 1e-3);
  const double e0 = sp->deformed_inner(v0, v0);
  for (const auto& s : traj.samples) EXPECT_LE(std::abs(sp->deformed_inner(s.x, s.x) - e0), 1e-8);
}

TEST(GeodesicOde, FourthOrderConvergence) {
  const auto sp = share(su2_berger(4.0));
  const TwoStepCurve c = random_curve(sp, 14);
  const GroupElement exact = curve_point(c, 2.0);
  auto err = [&](double h) {
    return coset_distance(exact, integrate_geodesic(*sp, c.initial_velocity(), 2.0, h).samples.back().g, *sp);
  };
  const double ratio = err(0.1) / err(0.05);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(GeodesicOde, OversizedStepIsReported) {
  const auto sp = share(su2_berger(4.0));
  const TwoStepCurve c = random_curve(sp, 15);
  try {
    integrate_geodesic(*sp, 6.0 * c.initial_velocity(), 10.0, 0.5);
    FAIL() << "expected StepTooLarge";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepTooLarge);
    EXPECT_GT(e.t(), 0.0);
  }
}

TEST(CosetDistance, Examples) {
  const auto sp = share(hopf_sphere(1, 2.0));
  const auto& alg = sp->algebra();
  proptest::Gen gen(16);
  const GroupElement g = alg->group_exp(gen.in(Subspace::whole(alg, "g"), 2.0));
  EXPECT_LE(coset_distance(g, g, *sp), 1e-14);
  EXPECT_LE(coset_distance(g, g * alg->group_exp(gen.in(sp->k(), 0.3)), *sp), 1e-9);

  const auto su2 = make_su(2);
  const HomogeneousSpace circle(Subspace::span(su2, std::vector<AlgebraVector>{su2->unit(2)}, "k"),
                                {Subspace::span(su2, std::vector<AlgebraVector>{su2->unit(0), su2->unit(1)}, "m1")},
                                {1.0}, "su2/u1");
  EXPECT_NEAR(coset_distance(GroupElement::identity(2), su2->group_exp(su2->unit(0), 0.1), circle),
              0.1 * std::sqrt(8.0), 1e-13);
}

TEST(Verify, HopfPasses) {
  VerifyOptions opt;
  opt.trials = 10;
  opt.seed = 7;
  const VerificationReport rep = verify_two_step(share(hopf_sphere(1, 2.0)), opt);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_LE(rep.residual("geodesic_defect"), 1e-8);
  EXPECT_LE(rep.residual("oracle_coset_error"), 1e-6);
  EXPECT_EQ(rep.find("one_step_equal_lambdas"), nullptr);
}

TEST(Verify, GroupWithBergerMetricPasses) {
  VerifyOptions opt;
  opt.trials = 5;
  const auto su2 = make_su(2);
  const auto sp = share(group_as_space(
      su2, Subspace::span(su2, std::vector<AlgebraVector>{su2->unit(2)}, "k_sub"), 3.0, "su2-group"));
  EXPECT_TRUE(verify_two_step(sp, opt).all_pass());
}

TEST(Verify, EqualLambdasAddTheOneStepCheck) {
  VerifyOptions opt;
  opt.trials = 5;
  opt.run_oracle = false;
  const VerificationReport rep = verify_two_step(share(wallach_su3(1, 1.0)), opt);
  ASSERT_NE(rep.find("one_step_equal_lambdas"), nullptr);
  EXPECT_TRUE(rep.all_pass());
}

TEST(Verify, CommutingPairAddsTheOneStepCheck) {
  VerifyOptions opt;
  opt.trials = 5;
  const VerificationReport rep = verify_two_step(share(u2_center(2.0)), opt);
  ASSERT_NE(rep.find("one_step_commuting"), nullptr);
  EXPECT_TRUE(rep.all_pass());
}

TEST(Verify, RejectsDegenerateAndViolatingSpaces) {
  VerifyOptions opt;
  opt.trials = 2;
  try {
    verify_two_step(share(flag_su({2, 1}, 2, 2.0)), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSplit);
  }
  opt.a_index = 1;
  opt.b_index = 0;
  try {
    verify_two_step(share(hopf_sphere(1, 2.0)), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConditionViolated);
  }
}

TEST(Verify, ReportDoesNotDependOnThreadCount) {
  const auto sp = share(wallach_su3(3, 2.0));
  VerifyOptions opt;
  opt.trials = 6;
  opt.seed = 42;
  opt.threads = 1;
  const std::string one = to_json(verify_two_step(sp, opt)).dump();
  opt.threads = 4;
  EXPECT_EQ(one, to_json(verify_two_step(sp, opt)).dump());
  opt.seed = 43;
  EXPECT_NE(one, to_json(verify_two_step(sp, opt)).dump());
}

TEST(Verify, LemmaResidual) {
  for (const auto& sp : {hopf_sphere(2, 2.0), flag_su({1, 1, 1, 1}, 2, 2.0), k_symmetric_su(3, {0, 1, 2}, 4, 2.0)}) {
    EXPECT_LE(lemma_invariance_residual(sp, 0, 1, 100, 3), 1e-9) << sp.name();
  }
  // Roles reversed, the subspace is not preserved.
  EXPECT_GT(lemma_invariance_residual(flag_su({1, 1, 1}, 1, 2.0), 1, 0, 20, 3), 1e-3);
}
