#pragma once

#include <complex>
#include <vector>

#include "heun/params.hpp"

namespace heun {

enum class TerminationClass {
  kEpsilonEqMinusN,             // ε = −N          (γ₀ = γ)
  kEpsGammaMinusAlphaEqMinusN,  // ε + γ − α = −N  (γ₀ = α)
  kEpsGammaMinusBetaEqMinusN,   // ε + γ − β = −N  (γ₀ = β)
};

TerminationClass termination_class_of(Gamma0Choice choice);

// ε + γ − γ₀ of the equation in the frame of `spec`.  The expansion can
// terminate after N + 1 terms only when this equals −N.
double termination_offset(const HeunParameters& p, const ExpansionSpec& spec);

bool validate_termination_class(const HeunParameters& p,
                                const ExpansionSpec& spec, int N);

// Monic polynomial in the ORIGINAL equation's q, lowest degree first.
// Its roots are the accessory parameters for which the expansion stops
// after N + 1 terms.
struct AccessoryPolynomial {
  std::vector<double> coefficients;
  int degree = 0;
  TerminationClass termination_class = TerminationClass::kEpsilonEqMinusN;
  int N = 0;

  double operator()(double q) const;
};

// Monic multiple of a_{N+1}(q), built from the continuant of the continued
// fraction with q kept symbolic.  The continuant never divides by R_n, so the
// polynomial exists even where a single R_n vanishes or has a pole; whether a
// root then yields a usable expansion is decided by `generate_coefficients`.
// The q in `p` is ignored.  Throws kInvalidTerminationClass.
AccessoryPolynomial q_polynomial(const HeunParameters& p,
                                 const ExpansionSpec& spec, int N);

struct AccessoryRoot {
  std::complex<double> value;
  bool is_real = false;
  // |poly(root)| after polishing, relative to sum |c_k| |root|^k.
  double relative_residual = 0;
};

// All N + 1 roots (repeated by multiplicity) from the companion-matrix
// eigenvalues, Newton polished.  Real roots first, ascending; complex roots
// after, ordered by real then imaginary part.
std::vector<AccessoryRoot> solve_q(const AccessoryPolynomial& poly);

// Q₁ − R₁P₂/(Q₂ − R₂P₃/(… Q_{N+1})) at the q carried by `p`.  Throws
// kZeroDenominator (index = depth) if an intermediate denominator vanishes.
double continued_fraction_residual(const HeunParameters& p,
                                   const ExpansionSpec& spec, int N);

// Polynomial helpers (lowest degree first).
std::complex<double> evaluate_polynomial(const std::vector<double>& coeffs,
                                         std::complex<double> x);
// Coefficients of p(x + shift).
std::vector<double> taylor_shift(const std::vector<double>& coeffs,
                                 double shift);

}  // namespace heun
