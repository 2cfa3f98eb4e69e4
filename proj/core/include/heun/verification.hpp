#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heun/params.hpp"
#include "heun/solutions.hpp"

namespace heun {

inline constexpr double kSingularMargin = 1e-2;

// Left-hand side of the Heun equation at z.  Throws kDomainError within
// kSingularMargin of 0, 1 or a.
double heun_residual(double u, double du, double d2u, const HeunParameters& p,
                     double z);

// Residual divided by |u| + |u′| + |u″| (zero when all three vanish).
double normalized_heun_residual(const SolutionValue& value,
                                const HeunParameters& p, double z);

struct TrajectorySample {
  double z = 0;
  double u = 0;
  double du = 0;
};

struct IntegratorOptions {
  // Scaled by max(|u0|, |du0|) so the integration is homogeneous in the
  // initial data.
  double abs_tolerance = 1e-12;
  double rel_tolerance = 1e-12;
  double initial_step = 1e-3;
  int max_steps_between_samples = 100000;
};

// Adaptive Dormand–Prince 5(4) integration of the Heun equation as a
// first-order system in (u, u′), starting from (u0, du0) at z0 and reporting
// dense output at every point in `samples` (which must lie between z0 and z1
// and be monotone in the direction of integration).  Throws kDomainError if
// [z0, z1] comes within kSingularMargin of a singular point and
// kStepFailure if the step controller cannot make progress.
std::vector<TrajectorySample> integrate_heun(
    const HeunParameters& p, double z0, double z1, double u0, double du0,
    std::span<const double> samples, const IntegratorOptions& options = {});

enum class Verdict { kPass, kFail, kInconclusive };

const char* to_string(Verdict verdict);

struct VerificationOptions {
  double residual_threshold = 1e-8;
  double oracle_threshold = 1e-6;
  // Empty means 0.05, 0.10, …, 0.95.
  std::vector<double> grid;
  // Preferred oracle interval; moved off a when a lies inside it.
  double oracle_start = 0.1;
  double oracle_end = 0.45;
  bool run_oracle = true;
};

struct VerificationReport {
  double residual_sup = 0;
  std::optional<double> oracle_max_deviation;
  std::optional<std::pair<double, double>> oracle_interval;
  std::optional<double> wronskian_at_half;
  std::vector<double> grid;
  Verdict verdict = Verdict::kInconclusive;
  double residual_threshold = 1e-8;
  double oracle_threshold = 1e-6;
  std::string reason;
};

std::vector<double> default_grid();

// Grid points at least kSingularMargin away from 0, 1 and a.
std::vector<double> admissible_grid(const std::vector<double>& grid,
                                    const HeunParameters& p);

// Interval of length ≥ 0.2 inside [0.05, 0.95] that avoids a, starting from
// the preferred [start, end].  nullopt when no such interval exists.
std::optional<std::pair<double, double>> oracle_interval(
    const HeunParameters& p, double start, double end);

// Residual sweep plus integrator cross-check of `form` against the equation
// with parameters `p`.
VerificationReport verify_solution(const SolutionForm& form,
                                   const HeunParameters& p,
                                   const VerificationOptions& options = {});
VerificationReport verify_solution(const SolutionForm& form,
                                   const VerificationOptions& options = {});

// u₁u₂′ − u₁′u₂ at z.
double wronskian(const SolutionForm& f1, const SolutionForm& f2, double z);

}  // namespace heun
