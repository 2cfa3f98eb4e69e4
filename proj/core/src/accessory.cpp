#include "heun/accessory.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heun/error.hpp"
#include "heun/recurrence.hpp"

namespace heun {
namespace {

using Poly = std::vector<double>;

constexpr double kClassTolerance = 1e-9;

void axpy(double scale, const Poly& x, Poly& y) {
  if (y.size() < x.size()) y.resize(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += scale * x[i];
}

// (c0 + c1 q) * x
Poly times_linear(double c0, double c1, const Poly& x) {
  Poly out(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] += c0 * x[i];
    out[i + 1] += c1 * x[i];
  }
  return out;
}

double polynomial_scale(const Poly& c, double magnitude) {
  double scale = 0.0;
  double power = 1.0;
  for (double ck : c) {
    scale += std::abs(ck) * power;
    power *= magnitude;
  }
  return scale;
}

std::complex<long double> horner(const Poly& c, std::complex<long double> x,
                                 std::complex<long double>& derivative) {
  std::complex<long double> value = 0.0L;
  derivative = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    derivative = derivative * x + value;
    value = value * x + static_cast<long double>(*it);
  }
  return value;
}

double relative_residual(const Poly& c, std::complex<double> x) {
  const double scale = polynomial_scale(c, std::abs(x));
  const double value = std::abs(evaluate_polynomial(c, x));
  return scale > 0.0 ? value / scale : value;
}

std::complex<double> polish(const Poly& c, std::complex<double> start) {
  std::complex<long double> x(start.real(), start.imag());
  std::complex<double> best = start;
  double best_residual = relative_residual(c, start);
  for (int iter = 0; iter < 50; ++iter) {
    std::complex<long double> d;
    const auto f = horner(c, x, d);
    if (d == std::complex<long double>(0.0L)) break;
    const auto step = f / d;
    x -= step;
    const std::complex<double> candidate(static_cast<double>(x.real()),
                                         static_cast<double>(x.imag()));
    const double r = relative_residual(c, candidate);
    if (r < best_residual) {
      best_residual = r;
      best = candidate;
    }
    if (std::abs(step) <= 1e-17L * (1.0L + std::abs(x))) break;
  }
  return best;
}

}  // namespace

TerminationClass termination_class_of(Gamma0Choice choice) {
  switch (choice) {
    case Gamma0Choice::kGamma: return TerminationClass::kEpsilonEqMinusN;
    case Gamma0Choice::kAlpha:
      return TerminationClass::kEpsGammaMinusAlphaEqMinusN;
    case Gamma0Choice::kBeta:
      return TerminationClass::kEpsGammaMinusBetaEqMinusN;
  }
  return TerminationClass::kEpsilonEqMinusN;
}

double termination_offset(const HeunParameters& p, const ExpansionSpec& spec) {
  const RecurrenceContext ctx = make_context(p, spec);
  return ctx.params().epsilon() + ctx.params().gamma() - ctx.gamma0();
}

bool validate_termination_class(const HeunParameters& p,
                                const ExpansionSpec& spec, int N) {
  if (N < 0) return false;
  return std::abs(termination_offset(p, spec) + N) <= kClassTolerance;
}

double AccessoryPolynomial::operator()(double q) const {
  return evaluate_polynomial(coefficients, q).real();
}

AccessoryPolynomial q_polynomial(const HeunParameters& p,
                                 const ExpansionSpec& spec, int N) {
  if (!validate_termination_class(p, spec, N)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "termination class requires eps + gamma - gamma0 = " << -N
        << ", got " << termination_offset(p, spec);
    throw HeunError(ErrorCode::kInvalidTerminationClass, msg.str());
  }
  // Q_n is affine in the original q: slope -1 directly, +1 after q -> αβ - q.
  const RecurrenceContext ctx = make_context(p.with_q(0.0), spec);
  const double q_slope = spec.frame == Frame::kDirectZ ? -1.0 : 1.0;

  // Continuant of the continued fraction: D_n = Q_n D_{n-1} - R_{n-1}P_n D_{n-2}
  // with D_0 = 1.  D_n is a_n(q) times the q-independent product of -R_k.
  Poly prev2{0.0};
  Poly prev{1.0};
  for (int n = 1; n <= N + 1; ++n) {
    Poly next = times_linear(coeff_Q(n, ctx), q_slope, prev);
    if (n >= 2) axpy(-coeff_RP(n, ctx), prev2, next);
    prev2 = std::move(prev);
    prev = std::move(next);
  }

  const double lead = prev.back();
  for (double& c : prev) c /= lead;
  prev.back() = 1.0;

  AccessoryPolynomial poly;
  poly.coefficients = std::move(prev);
  poly.degree = N + 1;
  poly.termination_class = termination_class_of(spec.gamma0_choice);
  poly.N = N;
  return poly;
}

std::vector<AccessoryRoot> solve_q(const AccessoryPolynomial& poly) {
  const Poly& c = poly.coefficients;
  const int degree = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> raw;
  if (degree == 1) {
    raw.emplace_back(-c[0] / c[1], 0.0);
  } else if (degree > 1) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) {
      companion(i, degree - 1) = -c[i] / c[degree];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& values = solver.eigenvalues();
    for (int i = 0; i < degree; ++i) raw.push_back(values[i]);
  }

  std::vector<AccessoryRoot> roots;
  roots.reserve(raw.size());
  for (auto x : raw) {
    AccessoryRoot root;
    const double magnitude = std::max(1.0, std::abs(x));
    if (std::abs(x.imag()) <= 1e-9 * magnitude) {
      root.value = polish(c, {x.real(), 0.0});
      root.value.imag(0.0);
      root.is_real = true;
    } else {
      root.value = polish(c, x);
      root.is_real = false;
    }
    root.relative_residual = relative_residual(c, root.value);
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(),
            [](const AccessoryRoot& l, const AccessoryRoot& r) {
              if (l.is_real != r.is_real) return l.is_real;
              if (l.value.real() != r.value.real()) {
                return l.value.real() < r.value.real();
              }
              return l.value.imag() < r.value.imag();
            });
  return roots;
}

double continued_fraction_residual(const HeunParameters& p,
                                   const ExpansionSpec& spec, int N) {
  if (!validate_termination_class(p, spec, N)) {
    throw HeunError(ErrorCode::kInvalidTerminationClass,
                    "continued fraction only terminates inside its class");
  }
  const RecurrenceContext ctx = make_context(p, spec);
  double tail = coeff_Q(N + 1, ctx);
  for (int k = N; k >= 1; --k) {
    const double guard = 1e-14 * (1.0 + std::abs(coeff_Q(k + 1, ctx)));
    if (std::abs(tail) <= guard) {
      std::ostringstream msg;
      msg << "continued fraction denominator vanishes at depth " << k + 1;
      throw HeunError(ErrorCode::kZeroDenominator, msg.str(), k + 1);
    }
    tail = coeff_Q(k, ctx) - coeff_RP(k + 1, ctx) / tail;
  }
  return tail;
}

std::complex<double> evaluate_polynomial(const std::vector<double>& coeffs,
                                         std::complex<double> x) {
  std::complex<double> value = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    value = value * x + *it;
  }
  return value;
}

std::vector<double> taylor_shift(const std::vector<double>& coeffs,
                                 double shift) {
  // Repeated synthetic division by (x - shift).
  std::vector<double> out = coeffs;
  const std::size_t n = out.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) {
      out[i - 1] += shift * out[i];
    }
  }
  return out;
}

}  // namespace heun
