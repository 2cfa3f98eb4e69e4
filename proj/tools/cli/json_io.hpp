#pragma once

#include <json.hpp>

#include "heun/accessory.hpp"
#include "heun/params.hpp"
#include "heun/recurrence.hpp"
#include "heun/solutions.hpp"
#include "heun/verification.hpp"

namespace heun::cli {

using nlohmann::json;

const char* to_string(Gamma0Choice choice);
const char* to_string(Frame frame);
const char* to_string(PrefactorBase base);
const char* to_string(TerminationClass cls);

Gamma0Choice parse_gamma0(const std::string& text);
Frame parse_frame(const std::string& text);

json params_to_json(const HeunParameters& p);
// Throws HeunError from make_params; json type errors propagate as
// nlohmann exceptions.
HeunParameters params_from_json(const json& j);

json solution_to_json(const SolutionForm& form);
SolutionForm solution_from_json(const json& j);

json report_to_json(const VerificationReport& report);
json polynomial_to_json(const AccessoryPolynomial& poly);
json coefficients_to_json(const CoefficientSequence& seq);

}  // namespace heun::cli
