#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expect_code.hpp"
#include "heun/accessory.hpp"
#include "heun/hyp2f1.hpp"
#include "heun/sampling.hpp"
#include "heun/solutions.hpp"
#include "heun/verification.hpp"
#include "oracles.hpp"

namespace heun {
namespace {

ExpansionSpec terminating(Gamma0Choice choice, int N) {
  return {choice, Frame::kDirectZ, Terminating{N}};
}

HeunParameters zero_epsilon() {
  const auto p = make_params(0.6, 1.1, 0, 0.9, -0.2, 0, 2.5);
  return p.with_q(p.a() * p.alpha_beta());
}

TEST(HeunResidual, ConstantSolvesProductFreeEquation) {
  const auto p = make_params(0.3, 0.9, -0.4, -0.2, 0, 0, 2.2);
  for (double z : {0.1, 0.4, 0.7, 0.95}) EXPECT_EQ(heun_residual(1, 0, 0, p, z), 0.0);
}

TEST(HeunResidual, PowerLawForShiftedBeta) {
  // β = δ − 1 and q = aγ(δ − 1) admit u = (1 − z)^{1−δ}.
  const double g = 0.4, d = 2.7, e = 0.35, a = 2.5;
  const double beta = d - 1, alpha = g + d + e - 1 - beta;
  const auto p = make_params(g, d, e, alpha, beta, a * g * (d - 1), a);
  for (double z : {0.3, 0.5, 0.7}) {
    const double u = std::pow(1 - z, 1 - d);
    const double du = -(1 - d) * std::pow(1 - z, -d);
    const double d2u = (1 - d) * -d * std::pow(1 - z, -d - 1);
    EXPECT_LE(std::abs(heun_residual(u, du, d2u, p, z)), 1e-10);
  }
}

TEST(HeunResidual, NonSolutionIsVisible) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0.4, 3);
  for (double z : {0.2, 0.5, 0.8}) {
    EXPECT_GT(std::abs(heun_residual(z * z, 2 * z, 2, p, z)), 1e-2);
  }
}

TEST(HeunResidual, RejectsNeighbourhoodOfSingularPoints) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0.4, 0.5);
  EXPECT_HEUN_ERROR(heun_residual(1, 0, 0, p, 0.005), ErrorCode::kDomainError);
  EXPECT_HEUN_ERROR(heun_residual(1, 0, 0, p, 0.995), ErrorCode::kDomainError);
  EXPECT_HEUN_ERROR(heun_residual(1, 0, 0, p, 0.505), ErrorCode::kDomainError);
}

TEST(NormalizedResidual, ZeroForVanishingSolution) {
  EXPECT_EQ(normalized_heun_residual({0, 0, 0}, zero_epsilon(), 0.5), 0.0);
}

TEST(IntegrateHeun, ReproducesHypergeometricSolution) {
  const auto p = zero_epsilon();
  const Hyp2F1Args at0{p.alpha(), p.beta(), p.gamma(), 0.1};
  const std::vector<double> samples = {0.2, 0.3, 0.4};
  const auto traj = integrate_heun(p, 0.1, 0.4, hyp2f1(at0), hyp2f1_derivative(at0), samples);
  ASSERT_EQ(traj.size(), 3u);
  for (const auto& s : traj) {
    const Hyp2F1Args at{p.alpha(), p.beta(), p.gamma(), s.z};
    EXPECT_LE(std::abs(s.u - hyp2f1(at)), 1e-8) << s.z;
    EXPECT_LE(std::abs(s.du - hyp2f1_derivative(at)), 1e-8) << s.z;
  }
}

TEST(IntegrateHeun, ZeroDataStaysZero) {
  const std::vector<double> samples = {0.2, 0.45};
  for (const auto& s : integrate_heun(zero_epsilon(), 0.1, 0.45, 0, 0, samples)) {
    EXPECT_EQ(s.u, 0.0);
    EXPECT_EQ(s.du, 0.0);
  }
}

TEST(IntegrateHeun, LinearInInitialData) {
  const std::vector<double> samples = {0.2, 0.3, 0.45};
  const auto p = zero_epsilon();
  const auto one = integrate_heun(p, 0.1, 0.45, 0.7, -1.3, samples);
  const auto two = integrate_heun(p, 0.1, 0.45, 1.4, -2.6, samples);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    EXPECT_LE(std::abs(two[k].u - 2 * one[k].u), 1e-12 * std::abs(2 * one[k].u));
    EXPECT_LE(std::abs(two[k].du - 2 * one[k].du), 1e-12 * std::abs(2 * one[k].du));
  }
}

TEST(IntegrateHeun, BackwardDirection) {
  const auto p = zero_epsilon();
  const Hyp2F1Args at{p.alpha(), p.beta(), p.gamma(), 0.45};
  const std::vector<double> samples = {0.3, 0.1};
  const auto traj =
      integrate_heun(p, 0.45, 0.1, hyp2f1(at), hyp2f1_derivative(at), samples);
  EXPECT_LE(std::abs(traj[1].u - hyp2f1({p.alpha(), p.beta(), p.gamma(), 0.1})), 1e-8);
}

TEST(IntegrateHeun, ErrorConditions) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0.4, 0.5);
  const std::vector<double> samples = {0.6};
  EXPECT_HEUN_ERROR(integrate_heun(p, 0.3, 0.7, 1, 0, samples), ErrorCode::kDomainError);
  const std::vector<double> outside = {0.9};
  EXPECT_HEUN_ERROR(integrate_heun(zero_epsilon(), 0.1, 0.45, 1, 0, outside),
                    ErrorCode::kDomainError);
  IntegratorOptions starved;
  starved.max_steps_between_samples = 2;
  starved.abs_tolerance = starved.rel_tolerance = 1e-15;
  const std::vector<double> far = {0.9};
  EXPECT_HEUN_ERROR(integrate_heun(zero_epsilon(), 0.05, 0.9, 1, 0.1, far, starved),
                    ErrorCode::kStepFailure);
}

TEST(IntegrateHeun, DeviationShrinksWithTolerance) {
  const auto p = zero_epsilon();
  const Hyp2F1Args at0{p.alpha(), p.beta(), p.gamma(), 0.1};
  const std::vector<double> samples = {0.9};
  const double exact = hyp2f1({p.alpha(), p.beta(), p.gamma(), 0.9});
  double previous = INFINITY;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    IntegratorOptions opts;
    opts.abs_tolerance = opts.rel_tolerance = tol;
    const auto traj =
        integrate_heun(p, 0.1, 0.9, hyp2f1(at0), hyp2f1_derivative(at0), samples, opts);
    const double dev = std::abs(traj[0].u - exact);
    EXPECT_LT(dev * 2, previous) << "tol " << tol;
    previous = std::max(dev, 1e-15);
  }
}

TEST(Grid, DefaultAndAdmissible) {
  const auto grid = default_grid();
  ASSERT_EQ(grid.size(), 19u);
  EXPECT_NEAR(grid.front(), 0.05, 1e-15);
  EXPECT_NEAR(grid.back(), 0.95, 1e-15);
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0.4, 0.505);
  const auto kept = admissible_grid(grid, p);
  EXPECT_EQ(kept.size(), 18u);
  for (double z : kept) EXPECT_GE(std::abs(z - 0.505), kSingularMargin);
}

TEST(Grid, OracleIntervalAvoidsA) {
  const auto outside = oracle_interval(zero_epsilon(), 0.1, 0.45);
  ASSERT_TRUE(outside.has_value());
  EXPECT_EQ(outside->first, 0.1);
  EXPECT_EQ(outside->second, 0.45);
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0.4, 0.3);
  const auto moved = oracle_interval(p, 0.1, 0.45);
  ASSERT_TRUE(moved.has_value());
  EXPECT_TRUE(moved->second < 0.3 || moved->first > 0.3);
  EXPECT_GE(moved->second - moved->first, 0.2 - 1e-12);
}

TEST(VerifySolution, SingleHypergeometricPasses) {
  const auto p = zero_epsilon();
  const auto sol = build_finite_solution(p, terminating(Gamma0Choice::kGamma, 0), p.q());
  const auto report = verify_solution(sol.form);
  EXPECT_EQ(report.verdict, Verdict::kPass) << report.reason;
  EXPECT_LE(report.residual_sup, 1e-10);
  ASSERT_TRUE(report.oracle_max_deviation.has_value());
  EXPECT_LE(*report.oracle_max_deviation, 1e-8);
}

TEST(VerifySolution, TwoTermSolutionsPassAndPerturbedQFails) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0, 3);
  const auto spec = terminating(Gamma0Choice::kGamma, 1);
  for (const auto& r : solve_q(q_polynomial(p, spec, 1))) {
    const double q = r.value.real();
    const auto sol = build_finite_solution(p, spec, q);
    EXPECT_EQ(verify_solution(sol.form).verdict, Verdict::kPass);
    const auto off = verify_solution(sol.form, p.with_q(q + 1e-3));
    EXPECT_EQ(off.verdict, Verdict::kFail);
    EXPECT_GT(off.residual_sup, 1e-5);
  }
}

TEST(VerifySolution, InconclusiveWhenNothingToEvaluate) {
  const auto p = zero_epsilon();
  const auto sol = build_finite_solution(p, terminating(Gamma0Choice::kGamma, 0), p.q());
  VerificationOptions opts;
  opts.grid = {0.001, 0.999};
  const auto report = verify_solution(sol.form, opts);
  EXPECT_EQ(report.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(report.reason.empty());
}

TEST(Wronskian, IdenticalAndProportionalForms) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0, 3);
  const auto spec = terminating(Gamma0Choice::kGamma, 1);
  const double q = solve_q(q_polynomial(p, spec, 1))[0].value.real();
  const auto f = build_finite_solution(p, spec, q).form;
  EXPECT_EQ(wronskian(f, f, 0.5), 0.0);
  auto scaled = f;
  for (auto& t : scaled.terms) t.coefficient *= -2.75;
  const auto v = evaluate(f, 0.5);
  EXPECT_LE(std::abs(wronskian(f, scaled, 0.5)), 1e-13 * 2.75 * std::abs(v.u * v.du));
}

TEST(Wronskian, IndependentSolutionsAndAbelIdentity) {
  const auto p = make_params(0.5, 0.7, -1, -1.1, 0.3, 0, 3);
  const auto spec = terminating(Gamma0Choice::kGamma, 1);
  for (const auto& r : solve_q(q_polynomial(p, spec, 1))) {
    const double q = r.value.real();
    const auto f1 = build_finite_solution(p, spec, q).form;
    const auto f2 = build_second_solution(p, q).form;
    EXPECT_GT(std::abs(wronskian(f1, f2, 0.5)), 1e-8);
    for (double z : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      const double dlog = oracle::central_difference(
          [&](double x) { return std::log(std::abs(wronskian(f1, f2, x))); }, z, 1e-5);
      const double want = -(p.gamma() / z + p.delta() / (z - 1) + p.epsilon() / (z - p.a()));
      EXPECT_NEAR(dlog, want, 1e-5 * std::max(1.0, std::abs(want))) << z;
    }
  }
}

}  // namespace
}  // namespace heun
