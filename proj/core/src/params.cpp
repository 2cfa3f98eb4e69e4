#include "heun/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "heun/error.hpp"

namespace heun {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFuchsianViolation: return "FuchsianViolation";
    case ErrorCode::kSingularA: return "SingularA";
    case ErrorCode::kComplexExponents: return "ComplexExponents";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kPoleAtC: return "PoleAtC";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kRecurrenceBreakdown: return "RecurrenceBreakdown";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kNotTerminated: return "NotTerminated";
    case ErrorCode::kWrongGamma0: return "WrongGamma0";
    case ErrorCode::kUnsupportedFrame: return "UnsupportedFrame";
    case ErrorCode::kInvalidTerminationClass: return "InvalidTerminationClass";
    case ErrorCode::kStepFailure: return "StepFailure";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFuchsianViolation:
    case ErrorCode::kSingularA:
    case ErrorCode::kNonFiniteInput:
    case ErrorCode::kInvalidTerminationClass:
    case ErrorCode::kWrongGamma0:
    case ErrorCode::kUnsupportedFrame:
      return true;
    default:
      return false;
  }
}

double HeunParameters::fuchsian_residual() const noexcept {
  return 1.0 + alpha_ + beta_ - (gamma_ + delta_ + epsilon_);
}

HeunParameters HeunParameters::with_q(double q) const {
  return make_params(gamma_, delta_, epsilon_, alpha_, beta_, q, a_);
}

HeunParameters make_params(double gamma, double delta, double epsilon,
                           double alpha, double beta, double q, double a) {
  for (double v : {gamma, delta, epsilon, alpha, beta, q, a}) {
    if (!std::isfinite(v)) {
      throw HeunError(ErrorCode::kNonFiniteInput,
                      "Heun parameters must be finite");
    }
  }
  if (std::abs(a) <= kParameterTolerance ||
      std::abs(a - 1.0) <= kParameterTolerance) {
    std::ostringstream msg;
    msg << "a = " << a << " coincides with a singular point (0 or 1)";
    throw HeunError(ErrorCode::kSingularA, msg.str());
  }
  const double residual = 1.0 + alpha + beta - (gamma + delta + epsilon);
  if (std::abs(residual) > kParameterTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Fuchsian condition 1 + alpha + beta = gamma + delta + epsilon "
           "violated by "
        << residual;
    throw HeunError(ErrorCode::kFuchsianViolation, msg.str());
  }
  return HeunParameters(gamma, delta, epsilon, alpha, beta, q, a);
}

double derive_delta(double gamma, double epsilon, double alpha, double beta) {
  return 1.0 + alpha + beta - gamma - epsilon;
}

double derive_epsilon(double gamma, double delta, double alpha, double beta) {
  return 1.0 + alpha + beta - gamma - delta;
}

HeunParameters map_to_one_minus_z(const HeunParameters& p) {
  return make_params(p.delta(), p.gamma(), p.epsilon(), p.alpha(), p.beta(),
                     p.alpha_beta() - p.q(), 1.0 - p.a());
}

ProductForm to_product_form(const HeunParameters& p) {
  return {p.gamma(), p.delta(), p.epsilon(), p.alpha_beta(), p.q(), p.a()};
}

ProductForm shift_positive_epsilon(const ProductForm& p) {
  const double shift = p.epsilon - 1.0;
  return {p.gamma,
          p.delta,
          2.0 - p.epsilon,
          p.alpha_beta - shift * (p.gamma + p.delta),
          p.q - p.gamma * shift,
          p.a};
}

ProductForm shift_one_minus_delta(const ProductForm& p) {
  const double shift = p.delta - 1.0;
  return {p.gamma,
          2.0 - p.delta,
          p.epsilon,
          p.alpha_beta - shift * (p.gamma + p.epsilon),
          p.q - p.a * p.gamma * shift,
          p.a};
}

HeunParameters resolve_exponents(const ProductForm& p) {
  const double sum = p.gamma + p.delta + p.epsilon - 1.0;
  const double discriminant = sum * sum - 4.0 * p.alpha_beta;
  if (discriminant < 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "exponent pair with sum " << sum << " and product " << p.alpha_beta
        << " is complex";
    throw HeunError(ErrorCode::kComplexExponents, msg.str());
  }
  const double root = std::sqrt(discriminant);
  const double big = 0.5 * (sum + std::copysign(root, sum));
  const double small = big != 0.0 ? p.alpha_beta / big : sum - big;
  return make_params(p.gamma, p.delta, p.epsilon, big, small, p.q, p.a);
}

HeunParameters map_positive_epsilon(const HeunParameters& p) {
  return resolve_exponents(shift_positive_epsilon(to_product_form(p)));
}

HeunParameters map_one_minus_delta_transform(const HeunParameters& p) {
  return resolve_exponents(shift_one_minus_delta(to_product_form(p)));
}

}  // namespace heun
