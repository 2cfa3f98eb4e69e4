#include "heun/verification.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "heun/error.hpp"

namespace heun {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

bool near_singular(double z, const HeunParameters& p) {
  return std::abs(z) < kSingularMargin || std::abs(z - 1.0) < kSingularMargin ||
         std::abs(z - p.a()) < kSingularMargin;
}

void require_regular(double z, const HeunParameters& p) {
  if (near_singular(z, p)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "z = " << z << " is within " << kSingularMargin
        << " of a singular point";
    throw HeunError(ErrorCode::kDomainError, msg.str());
  }
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "Pass";
    case Verdict::kFail: return "Fail";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double heun_residual(double u, double du, double d2u, const HeunParameters& p,
                     double z) {
  require_regular(z, p);
  const double zm1 = z - 1.0;
  const double zma = z - p.a();
  return d2u + (p.gamma() / z + p.delta() / zm1 + p.epsilon() / zma) * du +
         (p.alpha_beta() * z - p.q()) / (z * zm1 * zma) * u;
}

double normalized_heun_residual(const SolutionValue& value,
                                const HeunParameters& p, double z) {
  const double r = heun_residual(value.u, value.du, value.d2u, p, z);
  const double scale =
      std::abs(value.u) + std::abs(value.du) + std::abs(value.d2u);
  return scale > 0.0 ? std::abs(r) / scale : std::abs(r);
}

std::vector<TrajectorySample> integrate_heun(
    const HeunParameters& p, double z0, double z1, double u0, double du0,
    std::span<const double> samples, const IntegratorOptions& options) {
  const double lo = std::min(z0, z1);
  const double hi = std::max(z0, z1);
  const bool crosses = [&] {
    for (double s : {0.0, 1.0, p.a()}) {
      if (s > lo - kSingularMargin && s < hi + kSingularMargin) return true;
    }
    return false;
  }();
  if (crosses) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integration interval [" << lo << ", " << hi
        << "] touches a singular point";
    throw HeunError(ErrorCode::kDomainError, msg.str());
  }
  const double direction = z1 >= z0 ? 1.0 : -1.0;

  std::vector<double> times{z0};
  for (double s : samples) {
    if ((s - z0) * direction < 0.0 || (s - z1) * direction > 0.0) {
      throw HeunError(ErrorCode::kDomainError,
                      "sample point outside the integration interval");
    }
    if ((s - times.back()) * direction < 0.0) {
      throw HeunError(ErrorCode::kDomainError,
                      "sample points must be monotone");
    }
    if (s != times.back()) times.push_back(s);
  }

  const double g = p.gamma(), d = p.delta(), e = p.epsilon();
  const double ab = p.alpha_beta(), q = p.q(), a = p.a();
  auto system = [=](const State& x, State& dxdz, double z) {
    const double zm1 = z - 1.0;
    const double zma = z - a;
    dxdz[0] = x[1];
    dxdz[1] = -(g / z + d / zm1 + e / zma) * x[1] -
              (ab * z - q) / (z * zm1 * zma) * x[0];
  };

  // One state per entry of `times`; z0 leads and repeats are collapsed.
  std::vector<TrajectorySample> path;
  path.reserve(times.size());
  auto observer = [&](const State& x, double z) {
    path.push_back({z, x[0], x[1]});
  };

  // The absolute tolerance is taken relative to the size of the initial
  // data, so the step sequence is invariant under u -> c u and the
  // trajectory is exactly linear in (u0, du0) for power-of-two c.
  const double scale = std::max(std::abs(u0), std::abs(du0));
  State x{u0, du0};
  if (times.size() == 1 || scale == 0.0) {
    for (double t : times) path.push_back({t, u0, du0});
  } else {
    try {
      auto stepper = odeint::make_dense_output(
          options.abs_tolerance * scale, options.rel_tolerance,
          odeint::runge_kutta_dopri5<State>());
      odeint::integrate_times(
          stepper, system, x, times.begin(), times.end(),
          direction * options.initial_step, observer,
          odeint::max_step_checker(options.max_steps_between_samples));
    } catch (const std::exception& ex) {
      throw HeunError(ErrorCode::kStepFailure,
                      std::string("integrator failed: ") + ex.what());
    }
  }
  for (const auto& s : path) {
    if (!std::isfinite(s.u) || !std::isfinite(s.du)) {
      throw HeunError(ErrorCode::kStepFailure,
                      "integrator produced non-finite values");
    }
  }

  std::vector<TrajectorySample> out;
  out.reserve(samples.size());
  std::size_t j = 0;
  for (double s : samples) {
    while (path[j].z != s) ++j;
    out.push_back(path[j]);
  }
  return out;
}

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

std::vector<double> admissible_grid(const std::vector<double>& grid,
                                    const HeunParameters& p) {
  std::vector<double> out;
  for (double z : grid) {
    if (!near_singular(z, p)) out.push_back(z);
  }
  return out;
}

std::optional<std::pair<double, double>> oracle_interval(
    const HeunParameters& p, double start, double end) {
  constexpr double kGap = 0.05;
  constexpr double kMinLength = 0.2;
  const double a = p.a();
  if (a <= start - kGap || a >= end + kGap) return std::make_pair(start, end);

  const double length = end - start;
  const double left_hi = a - kGap;
  const double left_lo = std::max(0.05, left_hi - length);
  const double right_lo = a + kGap;
  const double right_hi = std::min(0.95, right_lo + length);
  const double left_len = left_hi - left_lo;
  const double right_len = right_hi - right_lo;
  if (std::max(left_len, right_len) < kMinLength) return std::nullopt;
  if (left_len >= right_len) return std::make_pair(left_lo, left_hi);
  return std::make_pair(right_lo, right_hi);
}

VerificationReport verify_solution(const SolutionForm& form,
                                   const HeunParameters& p,
                                   const VerificationOptions& options) {
  VerificationReport report;
  report.residual_threshold = options.residual_threshold;
  report.oracle_threshold = options.oracle_threshold;
  report.grid =
      admissible_grid(options.grid.empty() ? default_grid() : options.grid, p);
  if (report.grid.empty()) {
    report.reason = "no admissible grid points";
    return report;
  }

  try {
    double sup = 0.0;
    for (double z : report.grid) {
      const double r = normalized_heun_residual(evaluate(form, z), p, z);
      if (!std::isfinite(r)) {
        throw HeunError(ErrorCode::kDomainError,
                        "non-finite residual on the grid");
      }
      sup = std::max(sup, r);
    }
    report.residual_sup = sup;

    if (options.run_oracle) {
      report.oracle_interval =
          oracle_interval(p, options.oracle_start, options.oracle_end);
      if (report.oracle_interval) {
        const auto [lo, hi] = *report.oracle_interval;
        std::vector<double> samples;
        constexpr int kSamples = 8;
        for (int i = 1; i <= kSamples; ++i) {
          samples.push_back(lo + (hi - lo) * i / kSamples);
        }
        const SolutionValue seed = evaluate(form, lo);
        const auto path = integrate_heun(p, lo, hi, seed.u, seed.du, samples);
        double deviation = 0.0;
        for (const auto& s : path) {
          deviation = std::max(deviation, std::abs(evaluate(form, s.z).u - s.u));
        }
        report.oracle_max_deviation = deviation;
      }
    }
  } catch (const HeunError& err) {
    report.verdict = Verdict::kInconclusive;
    report.reason = std::string(to_string(err.code())) + ": " + err.what();
    return report;
  }

  const bool residual_ok = report.residual_sup <= options.residual_threshold;
  const bool oracle_ok =
      !report.oracle_max_deviation ||
      *report.oracle_max_deviation <= options.oracle_threshold;
  report.verdict = residual_ok && oracle_ok ? Verdict::kPass : Verdict::kFail;
  if (!residual_ok) {
    report.reason = "residual above threshold";
  } else if (!oracle_ok) {
    report.reason = "integrator deviation above threshold";
  }
  return report;
}

VerificationReport verify_solution(const SolutionForm& form,
                                   const VerificationOptions& options) {
  return verify_solution(form, form.params, options);
}

double wronskian(const SolutionForm& f1, const SolutionForm& f2, double z) {
  const SolutionValue v1 = evaluate(f1, z);
  const SolutionValue v2 = evaluate(f2, z);
  return v1.u * v2.du - v1.du * v2.u;
}

}  // namespace heun
