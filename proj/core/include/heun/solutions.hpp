#pragma once

#include <optional>
#include <vector>

#include "heun/params.hpp"
#include "heun/recurrence.hpp"

namespace heun {

enum class PrefactorBase { kOneMinusZ, kZMinusA };

struct Prefactor {
  PrefactorBase base = PrefactorBase::kOneMinusZ;
  double exponent = 0;
};

// coefficient · (1 − z)^{one_minus_z_power} · 2F1(upper_a, upper_b; lower; w)
// with w = z or 1 − z depending on the frame of the owning form.
struct HypergeometricTerm {
  double coefficient = 0;
  double upper_a = 0;
  double upper_b = 0;
  double lower_parameter = 1;
  int one_minus_z_power = 0;
};

// u(z) = Π prefactors · Σ terms, together with the parameters of the equation
// it is meant to solve.
struct SolutionForm {
  Frame frame = Frame::kDirectZ;
  std::vector<Prefactor> prefactors;
  std::vector<HypergeometricTerm> terms;
  HeunParameters params;
  std::optional<Gamma0Choice> gamma0_choice;
};

struct FiniteSolution {
  SolutionForm form;
  // (1 − z)^{1−δ}·polynomial representation, present for γ₀ ∈ {α, β}.
  std::optional<SolutionForm> reduced;
  CoefficientSequence coefficients;
};

// N + 1 term sum at a root of the accessory polynomial.  `spec.mode` must be
// Terminating.  Throws kInvalidTerminationClass, kRecurrenceBreakdown,
// kNotTerminated.
FiniteSolution build_finite_solution(const HeunParameters& p,
                                     const ExpansionSpec& spec, double q_root);

// Σ a_n 2F1(α, β; δ − n; 1 − z): the γ₀ = γ expansion of the equation in
// x = 1 − z.  Requires ε = −N.
FiniteSolution build_second_solution(const HeunParameters& p, double q_root);

// Rewrites 2F1(α, β; α − n; z) = (1 − z)^{−β−n} 2F1(−n, α − β − n; α − n; z)
// and collects the common factor (1 − z)^{1−δ}.  Throws kWrongGamma0 for a
// γ₀ = γ form and kUnsupportedFrame outside the direct frame.
SolutionForm reduce_to_polynomial_form(const SolutionForm& form);

// u = (z − a)^{1−ε} v for ε = +N ≥ 2, where v is the terminating expansion
// described by `spec` for the equation `map_positive_epsilon(p)` at accessory
// parameter `q_transformed`.  The returned form carries the original equation
// with q = q_transformed + γ(ε − 1).
FiniteSolution build_positive_epsilon_solution(const HeunParameters& p,
                                               const ExpansionSpec& spec,
                                               double q_transformed);

// Accessory parameter of the original equation for a root of the lifted one.
double lifted_q(const HeunParameters& p, double q_transformed);

struct SolutionValue {
  double u = 0;
  double du = 0;
  double d2u = 0;
};

// u, u′, u″ at z.  2F1″ comes from the hypergeometric equation.  Throws
// kDomainError when a factor or 2F1 argument leaves its domain.
SolutionValue evaluate(const SolutionForm& form, double z);

}  // namespace heun
