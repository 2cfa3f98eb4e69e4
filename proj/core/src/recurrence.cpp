#include "heun/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heun/error.hpp"

namespace heun {

double gamma0_value(const HeunParameters& p, Gamma0Choice choice) {
  switch (choice) {
    case Gamma0Choice::kGamma: return p.gamma();
    case Gamma0Choice::kAlpha: return p.alpha();
    case Gamma0Choice::kBeta: return p.beta();
  }
  return p.gamma();
}

RecurrenceContext::RecurrenceContext(const HeunParameters& params,
                                     Gamma0Choice choice)
    : params_(params), choice_(choice), gamma0_(gamma0_value(params, choice)) {}

RecurrenceContext make_context(const HeunParameters& p,
                               const ExpansionSpec& spec) {
  if (spec.frame == Frame::kOneMinusZ) {
    return RecurrenceContext(map_to_one_minus_z(p), spec.gamma0_choice);
  }
  return RecurrenceContext(p, spec.gamma0_choice);
}

double coeff_R(int n, const RecurrenceContext& ctx) {
  const auto& p = ctx.params();
  const double g0 = ctx.gamma0();
  const double lower = g0 - n;
  if (std::abs(lower) < 1e-12) {
    std::ostringstream msg;
    msg << "R_" << n << " divides by gamma0 - n = 0";
    throw HeunError(ErrorCode::kDivisionByZero, msg.str(), n);
  }
  const double shift = p.gamma() - g0 + n;
  return -p.a() * shift *
         (p.delta() + p.epsilon() + shift - 1.0 - p.alpha_beta() / lower);
}

double coeff_Q(int n, const RecurrenceContext& ctx) {
  const auto& p = ctx.params();
  const double g0 = ctx.gamma0();
  const double shift = p.gamma() - g0 + n;
  return -(p.a() - 1.0) * (p.epsilon() + shift - 1.0) * (g0 - n) +
         p.a() * (shift - 1.0) * (p.delta() + p.epsilon() + shift - 2.0) +
         (p.alpha_beta() * p.a() - p.q());
}

double coeff_P(int n, const RecurrenceContext& ctx) {
  const auto& p = ctx.params();
  const double g0 = ctx.gamma0();
  return (p.a() - 1.0) * (p.epsilon() + p.gamma() - g0 + n - 2.0) *
         (g0 - n + 1.0);
}

namespace {

// P_n = 0 is required for a_{n-1} = 0 to propagate to every later coefficient.
bool p_vanishes(int n, const RecurrenceContext& ctx) {
  const auto& p = ctx.params();
  const double g0 = ctx.gamma0();
  return std::abs(p.epsilon() + p.gamma() - g0 + n - 2.0) <= 1e-9 ||
         std::abs(g0 - n + 1.0) <= 1e-9;
}

}  // namespace

double coeff_RP(int n, const RecurrenceContext& ctx) {
  const auto& p = ctx.params();
  const double g0 = ctx.gamma0();
  const int m = n - 1;
  const double shift = p.gamma() - g0 + m;
  // R_m (γ₀ − m)
  const double r_regular =
      -p.a() * shift *
      ((p.delta() + p.epsilon() + shift - 1.0) * (g0 - m) - p.alpha_beta());
  return (p.a() - 1.0) * (p.epsilon() + p.gamma() - g0 + n - 2.0) * r_regular;
}

double breakdown_threshold(int n, const RecurrenceContext& ctx) {
  const double m = 1.0 + n;
  return 1e-12 * (1.0 + std::abs(ctx.params().a())) * m * m;
}

CoefficientSequence generate_coefficients(const RecurrenceContext& ctx, int K,
                                          double a0) {
  CoefficientSequence seq;
  seq.gamma0 = ctx.gamma0();
  seq.coefficients.reserve(static_cast<std::size_t>(std::max(K, 0)) + 1);
  seq.coefficients.push_back(a0);
  double running_max = std::abs(a0);
  auto negligible = [&](double v) {
    return std::abs(v) <= kTerminationThreshold * running_max;
  };

  for (int n = 1; n <= K; ++n) {
    const double prev = seq.coefficients[n - 1];
    const double prev2 = n >= 2 ? seq.coefficients[n - 2] : 0.0;
    const double P = coeff_P(n, ctx);
    const double Q = coeff_Q(n, ctx);
    const double numerator = Q * prev + P * prev2;

    double next = 0.0;
    const double scale = (std::abs(Q) + std::abs(P) + 1.0) * running_max;
    const bool numerator_vanishes =
        std::abs(numerator) <= kTerminationThreshold * scale;
    auto breakdown = [n](const char* why) {
      std::ostringstream msg;
      msg << "R_" << n << ' ' << why << " before the series terminates";
      return HeunError(ErrorCode::kRecurrenceBreakdown, msg.str(), n);
    };
    try {
      const double R = coeff_R(n, ctx);
      if (std::abs(R) > breakdown_threshold(n, ctx)) {
        next = -numerator / R;
      } else if (!(negligible(prev) && numerator_vanishes)) {
        // 0/0 right after the last nonzero coefficient is the only
        // admissible way for R_n to vanish.
        throw breakdown("vanishes");
      }
    } catch (const HeunError& err) {
      if (err.code() != ErrorCode::kDivisionByZero) throw;
      // γ₀ = n puts a pole in R_n; a_n = 0 is forced only by a zero numerator.
      if (!numerator_vanishes) throw breakdown("has a pole");
    }
    seq.coefficients.push_back(next);

    if (n >= 2 && negligible(prev) && negligible(next) &&
        p_vanishes(n, ctx)) {
      seq.terminated_at = n - 2;
      break;
    }
    running_max = std::max(running_max, std::abs(next));
  }

  if (seq.terminated_at) {
    seq.coefficients.resize(static_cast<std::size_t>(K) + 1, 0.0);
    std::fill(seq.coefficients.begin() + *seq.terminated_at + 1,
              seq.coefficients.end(), 0.0);
  }
  return seq;
}

std::optional<double> tail_ratio(const CoefficientSequence& seq, int window) {
  const auto& c = seq.coefficients;
  const int K = static_cast<int>(c.size()) - 1;
  if (K < 1) return std::nullopt;
  const int start = std::max(1, K - window + 1);
  double log_sum = 0.0;
  int count = 0;
  for (int n = start; n <= K; ++n) {
    if (c[n] == 0.0 || c[n - 1] == 0.0) return std::nullopt;
    log_sum += std::log(std::abs(c[n] / c[n - 1]));
    ++count;
  }
  return std::exp(log_sum / count);
}

}  // namespace heun
