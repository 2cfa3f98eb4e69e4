#pragma once

#include <optional>
#include <vector>

#include "heun/params.hpp"

namespace heun {

// Parameters of the equation being expanded (already mapped to the chosen
// frame) together with the resolved starting lower parameter γ₀ of the
// expansion functions 2F1(α, β; γ₀ − n; ·).
class RecurrenceContext {
 public:
  // Resolves γ₀ from `choice`; `params` must already be in the working frame.
  RecurrenceContext(const HeunParameters& params, Gamma0Choice choice);

  const HeunParameters& params() const noexcept { return params_; }
  Gamma0Choice choice() const noexcept { return choice_; }
  double gamma0() const noexcept { return gamma0_; }

 private:
  HeunParameters params_;
  Gamma0Choice choice_;
  double gamma0_;
};

// Applies the frame map of `spec` to `p` and resolves γ₀.
RecurrenceContext make_context(const HeunParameters& p,
                               const ExpansionSpec& spec);

double gamma0_value(const HeunParameters& p, Gamma0Choice choice);

// Coefficients of R_n a_n + Q_n a_{n-1} + P_n a_{n-2} = 0.
//
// R_n = -a(γ-γ₀+n)(δ+ε+γ-γ₀+n-1 - αβ/(γ₀-n))
// Q_n = -(a-1)(ε+γ-γ₀+n-1)(γ₀-n) + a(γ-γ₀+n-1)(δ+ε+γ-γ₀+n-2) + (αβa - q)
// P_n = (a-1)(ε+γ-γ₀+n-2)(γ₀-n+1)
//
// coeff_R throws kDivisionByZero when |γ₀ - n| < 1e-12.
double coeff_R(int n, const RecurrenceContext& ctx);
double coeff_Q(int n, const RecurrenceContext& ctx);
double coeff_P(int n, const RecurrenceContext& ctx);

// R_{n-1} P_n with the common factor γ₀ − n + 1 cancelled, so it stays finite
// where R_{n-1} alone has a pole.  This is the coupling that appears in the
// continued fraction and in its continuant Dₙ = Qₙ Dₙ₋₁ − R_{n-1}Pₙ Dₙ₋₂.
double coeff_RP(int n, const RecurrenceContext& ctx);

// a₀..a_K of the expansion.  terminated_at = N means a_N is the last
// nonzero coefficient; everything after it is stored as exact zero.
struct CoefficientSequence {
  std::vector<double> coefficients;
  double gamma0 = 0;
  std::optional<int> terminated_at;
};

inline constexpr double kTerminationThreshold = 1e-10;

// Forward recurrence with a₋₂ = a₋₁ = 0 and a₀ = `a0`.  Termination is
// declared once two consecutive coefficients drop below 1e-10 of the running
// maximum.  Throws kRecurrenceBreakdown (with the step index) when R_n
// vanishes before the series has terminated.
CoefficientSequence generate_coefficients(const RecurrenceContext& ctx, int K,
                                          double a0 = 1.0);

// Threshold under which R_n counts as zero: 1e-12 (1 + |a|)(1 + n)².
double breakdown_threshold(int n, const RecurrenceContext& ctx);

// Ratio |a_K / a_{K-1}| averaged (geometric mean) over the last `window`
// steps.  Returns nullopt when the tail contains zeros.
std::optional<double> tail_ratio(const CoefficientSequence& seq,
                                 int window = 10);

}  // namespace heun
