#include "heun/solutions.hpp"

#include <cmath>
#include <sstream>

#include "heun/accessory.hpp"
#include "heun/error.hpp"
#include "heun/hyp2f1.hpp"

namespace heun {
namespace {

// Value with first and second z-derivatives.
struct Jet {
  double v = 0;
  double d1 = 0;
  double d2 = 0;
};

Jet operator*(const Jet& f, const Jet& g) {
  return {f.v * g.v, f.d1 * g.v + f.v * g.d1,
          f.d2 * g.v + 2.0 * f.d1 * g.d1 + f.v * g.d2};
}

// b(z)^e for a linear base with slope ±1.
Jet power_jet(double base, double slope, double exponent) {
  if (exponent == 0.0) return {1.0, 0.0, 0.0};
  const bool integral = exponent == std::round(exponent);
  if ((base < 0.0 && !integral) || (base == 0.0 && exponent < 2.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "prefactor base " << base << " with exponent " << exponent
        << " is outside its domain";
    throw HeunError(ErrorCode::kDomainError, msg.str());
  }
  const double v = std::pow(base, exponent);
  const double d1 = exponent * std::pow(base, exponent - 1.0) * slope;
  const double d2 = exponent * (exponent - 1.0) * std::pow(base, exponent - 2.0);
  return {v, d1, d2};
}

Jet hypergeometric_jet(const HypergeometricTerm& t, double w, double slope) {
  const Hyp2F1Args args{t.upper_a, t.upper_b, t.lower_parameter, w};
  const double f = hyp2f1(args);
  const double df = hyp2f1_derivative(args);
  double d2f = 0.0;
  const double ab = t.upper_a * t.upper_b;
  if (w == 0.0) {
    d2f = ab / t.lower_parameter *
          hyp2f1_derivative({t.upper_a + 1.0, t.upper_b + 1.0,
                             t.lower_parameter + 1.0, w});
  } else {
    // w(1 − w)F″ + [c − (a + b + 1)w]F′ − abF = 0
    d2f = (ab * f -
           (t.lower_parameter - (t.upper_a + t.upper_b + 1.0) * w) * df) /
          (w * (1.0 - w));
  }
  return {f, slope * df, d2f};
}

int terminating_order(const ExpansionSpec& spec) {
  if (const auto* t = std::get_if<Terminating>(&spec.mode)) return t->N;
  throw HeunError(ErrorCode::kInvalidTerminationClass,
                  "finite solutions need a Terminating expansion spec");
}

}  // namespace

FiniteSolution build_finite_solution(const HeunParameters& p,
                                     const ExpansionSpec& spec,
                                     double q_root) {
  const int N = terminating_order(spec);
  const HeunParameters params = p.with_q(q_root);
  if (!validate_termination_class(params, spec, N)) {
    std::ostringstream msg;
    msg << "parameters are not in the N = " << N << " termination class";
    throw HeunError(ErrorCode::kInvalidTerminationClass, msg.str());
  }
  const RecurrenceContext ctx = make_context(params, spec);
  CoefficientSequence seq = generate_coefficients(ctx, N + 2);
  if (!seq.terminated_at || *seq.terminated_at > N) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "expansion did not terminate at N = " << N << " for q = " << q_root;
    throw HeunError(ErrorCode::kNotTerminated, msg.str());
  }

  SolutionForm form{spec.frame, {}, {}, params, spec.gamma0_choice};
  const auto& working = ctx.params();
  for (int n = 0; n <= *seq.terminated_at; ++n) {
    form.terms.push_back({seq.coefficients[n], working.alpha(), working.beta(),
                          ctx.gamma0() - n, 0});
  }

  FiniteSolution out{form, std::nullopt, std::move(seq)};
  if (spec.gamma0_choice != Gamma0Choice::kGamma &&
      spec.frame == Frame::kDirectZ) {
    out.reduced = reduce_to_polynomial_form(out.form);
  }
  return out;
}

FiniteSolution build_second_solution(const HeunParameters& p, double q_root) {
  const double n_real = -p.epsilon();
  const double N = std::round(n_real);
  if (N < 0.0 || std::abs(n_real - N) > 1e-9) {
    throw HeunError(ErrorCode::kInvalidTerminationClass,
                    "the second solution needs epsilon = -N");
  }
  const ExpansionSpec spec{Gamma0Choice::kGamma, Frame::kOneMinusZ,
                           Terminating{static_cast<int>(N)}};
  return build_finite_solution(p, spec, q_root);
}

SolutionForm reduce_to_polynomial_form(const SolutionForm& form) {
  if (!form.gamma0_choice || *form.gamma0_choice == Gamma0Choice::kGamma) {
    throw HeunError(ErrorCode::kWrongGamma0,
                    "polynomial reduction applies to gamma0 = alpha or beta");
  }
  if (form.frame != Frame::kDirectZ) {
    throw HeunError(ErrorCode::kUnsupportedFrame,
                    "polynomial reduction is defined in the direct frame");
  }
  const bool alpha = *form.gamma0_choice == Gamma0Choice::kAlpha;
  const double one_minus_delta = 1.0 - form.params.delta();

  SolutionForm reduced{Frame::kDirectZ, form.prefactors, {}, form.params,
                       form.gamma0_choice};
  reduced.prefactors.push_back({PrefactorBase::kOneMinusZ, one_minus_delta});
  for (std::size_t n = 0; n < form.terms.size(); ++n) {
    const auto& t = form.terms[n];
    const double x = alpha ? t.upper_a : t.upper_b;
    const double y = alpha ? t.upper_b : t.upper_a;
    const double shift = static_cast<double>(n);
    const double extra = -y - shift - one_minus_delta;
    const double power = std::round(extra);
    if (std::abs(extra - power) > 1e-9 || power < 0.0) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "term " << n << " leaves a non-integral (1 - z) power " << extra;
      throw HeunError(ErrorCode::kInvalidTerminationClass, msg.str());
    }
    reduced.terms.push_back({t.coefficient, -shift, x - y - shift,
                             t.lower_parameter, static_cast<int>(power)});
  }
  return reduced;
}

double lifted_q(const HeunParameters& p, double q_transformed) {
  return q_transformed + p.gamma() * (p.epsilon() - 1.0);
}

FiniteSolution build_positive_epsilon_solution(const HeunParameters& p,
                                               const ExpansionSpec& spec,
                                               double q_transformed) {
  const double N = std::round(p.epsilon());
  if (N < 2.0 || std::abs(p.epsilon() - N) > 1e-9) {
    throw HeunError(ErrorCode::kInvalidTerminationClass,
                    "the (z - a)^{1 - eps} lift needs eps = +N >= 2");
  }
  const HeunParameters transformed =
      map_positive_epsilon(p).with_q(q_transformed);
  FiniteSolution out = build_finite_solution(transformed, spec, q_transformed);

  const Prefactor lift{PrefactorBase::kZMinusA, 1.0 - p.epsilon()};
  const HeunParameters original = p.with_q(lifted_q(p, q_transformed));
  out.form.prefactors.push_back(lift);
  out.form.params = original;
  if (out.reduced) {
    out.reduced->prefactors.push_back(lift);
    out.reduced->params = original;
  }
  return out;
}

SolutionValue evaluate(const SolutionForm& form, double z) {
  if (!std::isfinite(z)) {
    throw HeunError(ErrorCode::kDomainError, "z must be finite");
  }
  const bool direct = form.frame == Frame::kDirectZ;
  const double w = direct ? z : 1.0 - z;
  const double slope = direct ? 1.0 : -1.0;

  Jet sum;
  for (const auto& t : form.terms) {
    Jet term = hypergeometric_jet(t, w, slope);
    if (t.one_minus_z_power != 0) {
      term = power_jet(1.0 - z, -1.0, t.one_minus_z_power) * term;
    }
    sum.v += t.coefficient * term.v;
    sum.d1 += t.coefficient * term.d1;
    sum.d2 += t.coefficient * term.d2;
  }

  Jet total = sum;
  for (const auto& f : form.prefactors) {
    const Jet factor = f.base == PrefactorBase::kOneMinusZ
                           ? power_jet(1.0 - z, -1.0, f.exponent)
                           : power_jet(z - form.params.a(), 1.0, f.exponent);
    total = factor * total;
  }
  return {total.v, total.d1, total.d2};
}

}  // namespace heun
