#pragma once

#include <variant>

namespace heun {

// Absolute tolerance used by every parameter validation check.
inline constexpr double kParameterTolerance = 1e-12;

// The seven constants of the general Heun equation
//
//   u'' + (γ/z + δ/(z-1) + ε/(z-a)) u' + (αβ z - q) / (z(z-1)(z-a)) u = 0
//
// with the Fuchsian condition 1 + α + β = γ + δ + ε.  Instances are only
// produced by `make_params` (or the frame maps below), so a value in hand is
// always a validated one.
class HeunParameters {
 public:
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }
  double epsilon() const noexcept { return epsilon_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double q() const noexcept { return q_; }
  double a() const noexcept { return a_; }

  double alpha_beta() const noexcept { return alpha_ * beta_; }

  // 1 + α + β − (γ + δ + ε).
  double fuchsian_residual() const noexcept;

  // Same equation with a different accessory parameter.
  HeunParameters with_q(double q) const;

  friend bool operator==(const HeunParameters&,
                         const HeunParameters&) = default;

 private:
  friend HeunParameters make_params(double, double, double, double, double,
                                    double, double);
  HeunParameters(double gamma, double delta, double epsilon, double alpha,
                 double beta, double q, double a)
      : gamma_(gamma), delta_(delta), epsilon_(epsilon), alpha_(alpha),
        beta_(beta), q_(q), a_(a) {}

  double gamma_;
  double delta_;
  double epsilon_;
  double alpha_;
  double beta_;
  double q_;
  double a_;
};

// Throws HeunError: kNonFiniteInput, kFuchsianViolation, kSingularA.
HeunParameters make_params(double gamma, double delta, double epsilon,
                           double alpha, double beta, double q, double a);

// Exponent that satisfies the Fuchsian condition given the other four.
double derive_delta(double gamma, double epsilon, double alpha, double beta);
double derive_epsilon(double gamma, double delta, double alpha, double beta);

enum class Gamma0Choice { kGamma, kAlpha, kBeta };
enum class Frame { kDirectZ, kOneMinusZ };

struct Truncated {
  int K = 1;
};
struct Terminating {
  int N = 0;
};

// Which of the three expansions is used, in which variable, and whether the
// series is cut at K terms or expected to terminate after N + 1 terms.
struct ExpansionSpec {
  Gamma0Choice gamma0_choice = Gamma0Choice::kGamma;
  Frame frame = Frame::kDirectZ;
  std::variant<Truncated, Terminating> mode = Terminating{};
};

// The equation in the variable x = 1 − z: γ ↔ δ, q → αβ − q, a → 1 − a.
// Involution on valid parameter sets.
HeunParameters map_to_one_minus_z(const HeunParameters& p);

// The parameter maps induced by u = (z − a)^{1−ε} v and u = (1 − z)^{1−δ} v
// only fix the product αβ of the new equation.  ProductForm carries that
// product; the individual exponents are recovered by `resolve_exponents`.
struct ProductForm {
  double gamma = 0;
  double delta = 0;
  double epsilon = 0;
  double alpha_beta = 0;
  double q = 0;
  double a = 0;
};

ProductForm to_product_form(const HeunParameters& p);

// u = (z − a)^{1−ε} v:  ε → 2 − ε, αβ → αβ − (ε−1)(γ+δ), q → q − γ(ε−1).
ProductForm shift_positive_epsilon(const ProductForm& p);

// u = (1 − z)^{1−δ} v:  δ → 2 − δ, αβ → αβ − (δ−1)(γ+ε), q → q − aγ(δ−1).
ProductForm shift_one_minus_delta(const ProductForm& p);

// Splits αβ into the two real roots of x² − (γ+δ+ε−1)x + αβ so the Fuchsian
// condition holds.  The pair is unordered; α receives the root of larger
// magnitude.  Throws kComplexExponents when the discriminant is negative.
HeunParameters resolve_exponents(const ProductForm& p);

HeunParameters map_positive_epsilon(const HeunParameters& p);
HeunParameters map_one_minus_delta_transform(const HeunParameters& p);

}  // namespace heun
