#include "json_io.hpp"

#include <stdexcept>

namespace heun::cli {

const char* to_string(Gamma0Choice choice) {
  switch (choice) {
    case Gamma0Choice::kGamma: return "gamma";
    case Gamma0Choice::kAlpha: return "alpha";
    case Gamma0Choice::kBeta: return "beta";
  }
  return "gamma";
}

const char* to_string(Frame frame) {
  return frame == Frame::kDirectZ ? "DirectZ" : "OneMinusZ";
}

const char* to_string(PrefactorBase base) {
  return base == PrefactorBase::kOneMinusZ ? "OneMinusZ" : "ZMinusA";
}

const char* to_string(TerminationClass cls) {
  switch (cls) {
    case TerminationClass::kEpsilonEqMinusN: return "EpsilonEqMinusN";
    case TerminationClass::kEpsGammaMinusAlphaEqMinusN:
      return "EpsGammaMinusAlphaEqMinusN";
    case TerminationClass::kEpsGammaMinusBetaEqMinusN:
      return "EpsGammaMinusBetaEqMinusN";
  }
  return "EpsilonEqMinusN";
}

Gamma0Choice parse_gamma0(const std::string& text) {
  if (text == "gamma") return Gamma0Choice::kGamma;
  if (text == "alpha") return Gamma0Choice::kAlpha;
  if (text == "beta") return Gamma0Choice::kBeta;
  throw std::invalid_argument("unknown gamma0 choice '" + text + "'");
}

Frame parse_frame(const std::string& text) {
  if (text == "DirectZ" || text == "z") return Frame::kDirectZ;
  if (text == "OneMinusZ" || text == "1-z") return Frame::kOneMinusZ;
  throw std::invalid_argument("unknown frame '" + text + "'");
}

namespace {

PrefactorBase parse_base(const std::string& text) {
  if (text == "OneMinusZ") return PrefactorBase::kOneMinusZ;
  if (text == "ZMinusA") return PrefactorBase::kZMinusA;
  throw std::invalid_argument("unknown prefactor base '" + text + "'");
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json params_to_json(const HeunParameters& p) {
  return {{"gamma", p.gamma()}, {"delta", p.delta()},
          {"epsilon", p.epsilon()}, {"alpha", p.alpha()},
          {"beta", p.beta()},   {"q", p.q()},
          {"a", p.a()}};
}

HeunParameters params_from_json(const json& j) {
  return make_params(j.at("gamma").get<double>(), j.at("delta").get<double>(),
                     j.at("epsilon").get<double>(), j.at("alpha").get<double>(),
                     j.at("beta").get<double>(), j.at("q").get<double>(),
                     j.at("a").get<double>());
}

json solution_to_json(const SolutionForm& form) {
  json prefactors = json::array();
  for (const auto& f : form.prefactors) {
    prefactors.push_back({{"base", to_string(f.base)}, {"exponent", f.exponent}});
  }
  json terms = json::array();
  for (const auto& t : form.terms) {
    terms.push_back({{"coefficient", t.coefficient},
                     {"lower_parameter", t.lower_parameter},
                     {"upper", {t.upper_a, t.upper_b}},
                     {"one_minus_z_power", t.one_minus_z_power}});
  }
  json out = {{"frame", to_string(form.frame)},
              {"prefactors", prefactors},
              {"terms", terms},
              {"params", params_to_json(form.params)}};
  out["gamma0"] = form.gamma0_choice ? json(to_string(*form.gamma0_choice))
                                     : json(nullptr);
  return out;
}

SolutionForm solution_from_json(const json& j) {
  SolutionForm form{parse_frame(j.at("frame").get<std::string>()),
                    {},
                    {},
                    params_from_json(j.at("params")),
                    std::nullopt};
  for (const auto& f : j.at("prefactors")) {
    form.prefactors.push_back({parse_base(f.at("base").get<std::string>()),
                               f.at("exponent").get<double>()});
  }
  for (const auto& t : j.at("terms")) {
    const auto& upper = t.at("upper");
    form.terms.push_back({t.at("coefficient").get<double>(),
                          upper.at(0).get<double>(), upper.at(1).get<double>(),
                          t.at("lower_parameter").get<double>(),
                          t.value("one_minus_z_power", 0)});
  }
  if (j.contains("gamma0") && j["gamma0"].is_string()) {
    form.gamma0_choice = parse_gamma0(j["gamma0"].get<std::string>());
  }
  return form;
}

json report_to_json(const VerificationReport& report) {
  json out = {{"residual_sup", report.residual_sup},
              {"oracle_max_deviation",
               optional_number(report.oracle_max_deviation)},
              {"wronskian_at_half", optional_number(report.wronskian_at_half)},
              {"grid", report.grid},
              {"verdict", to_string(report.verdict)},
              {"thresholds",
               {{"residual", report.residual_threshold},
                {"oracle", report.oracle_threshold}}}};
  out["oracle_interval"] =
      report.oracle_interval
          ? json::array({report.oracle_interval->first,
                         report.oracle_interval->second})
          : json(nullptr);
  if (!report.reason.empty()) out["reason"] = report.reason;
  return out;
}

json polynomial_to_json(const AccessoryPolynomial& poly) {
  return {{"coefficients", poly.coefficients},
          {"degree", poly.degree},
          {"termination_class", to_string(poly.termination_class)},
          {"N", poly.N}};
}

json coefficients_to_json(const CoefficientSequence& seq) {
  json out = {{"coefficients", seq.coefficients}, {"gamma0", seq.gamma0}};
  out["terminated_at"] =
      seq.terminated_at ? json(*seq.terminated_at) : json(nullptr);
  return out;
}

}  // namespace heun::cli
