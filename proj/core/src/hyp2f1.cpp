#include "heun/hyp2f1.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "heun/error.hpp"

namespace heun {
namespace {

using hyp2f1_detail::kPoleTolerance;
using hyp2f1_detail::kStopRatio;
using hyp2f1_detail::kTermBudget;

// Degree m when x is within tolerance of the nonpositive integer -m.
std::optional<int> nonpositive_integer(double x) {
  if (x > kPoleTolerance) return std::nullopt;
  const double r = std::round(x);
  if (std::abs(x - r) > kPoleTolerance) return std::nullopt;
  return static_cast<int>(-r);
}

// Number of the last nonzero term when a numerator parameter is -m.
std::optional<int> polynomial_degree(double a, double b) {
  const auto ma = nonpositive_integer(a);
  const auto mb = nonpositive_integer(b);
  if (ma && mb) return std::min(*ma, *mb);
  return ma ? ma : mb;
}

void check_pole(double a, double b, double c) {
  const auto pole = nonpositive_integer(c);
  if (!pole) return;
  const auto degree = polynomial_degree(a, b);
  if (degree && *degree < *pole) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "2F1 lower parameter c = " << c
      << " hits a pole at a nonpositive integer";
  throw HeunError(ErrorCode::kPoleAtC, msg.str());
}

double power_series(double a, double b, double c, double z) {
  const auto degree = polynomial_degree(a, b);
  const long double za = z;
  long double term = 1.0L;
  long double sum = 1.0L;
  int quiet = 0;
  for (int n = 0; n < kTermBudget; ++n) {
    if (degree && n >= *degree) return static_cast<double>(sum);
    term *= (static_cast<long double>(a) + n) *
            (static_cast<long double>(b) + n) /
            ((static_cast<long double>(c) + n) * (n + 1)) * za;
    sum += term;
    if (term == 0.0L ||
        std::abs(term) < kStopRatio * std::abs(sum)) {
      if (++quiet == 3) return static_cast<double>(sum);
    } else {
      quiet = 0;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "2F1(" << a << ", " << b << "; " << c << "; " << z
      << ") did not converge within " << kTermBudget << " terms";
  throw HeunError(ErrorCode::kNoConvergence, msg.str());
}

void check_args(const Hyp2F1Args& args) {
  if (!std::isfinite(args.alpha) || !std::isfinite(args.beta) ||
      !std::isfinite(args.c) || !std::isfinite(args.z)) {
    throw HeunError(ErrorCode::kDomainError, "2F1 arguments must be finite");
  }
  if (!(std::abs(args.z) < 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "2F1 argument z = " << args.z << " outside (-1, 1)";
    throw HeunError(ErrorCode::kDomainError, msg.str());
  }
}

}  // namespace

double hyp2f1(const Hyp2F1Args& args) {
  check_args(args);
  auto [a, b] = std::minmax(args.alpha, args.beta);
  const double c = args.c;
  const double z = args.z;
  check_pole(a, b, c);
  if (z == 0.0) return 1.0;
  if (z >= -0.5 || polynomial_degree(a, b)) return power_series(a, b, c, z);

  // Pfaff: keep the numerator that is not touched by c - b.
  const double w = z / (z - 1.0);
  check_pole(a, c - b, c);
  return std::pow(1.0 - z, -a) * power_series(a, c - b, c, w);
}

double hyp2f1_derivative(const Hyp2F1Args& args) {
  check_args(args);
  check_pole(args.alpha, args.beta, args.c);
  const double ab = args.alpha * args.beta;
  if (ab == 0.0) return 0.0;
  return ab / args.c *
         hyp2f1({args.alpha + 1.0, args.beta + 1.0, args.c + 1.0, args.z});
}

double contiguous_lower_c(const Hyp2F1Args& args) {
  const double lhs = args.z * hyp2f1_derivative(args);
  const double rhs =
      (args.c - 1.0) *
      (hyp2f1({args.alpha, args.beta, args.c - 1.0, args.z}) - hyp2f1(args));
  return lhs - rhs;
}

double contiguous_raise_c(const Hyp2F1Args& args) {
  const double s = args.alpha + args.beta - args.c;
  const double lhs = (args.z - 1.0) * hyp2f1_derivative(args);
  const double rhs =
      -s * hyp2f1(args) +
      (s - args.alpha * args.beta / args.c) *
          hyp2f1({args.alpha, args.beta, args.c + 1.0, args.z});
  return lhs - rhs;
}

}  // namespace heun
