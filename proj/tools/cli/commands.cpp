#include "commands.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "heun/error.hpp"
#include "heun/sampling.hpp"
#include "json_io.hpp"

namespace heun::cli {
namespace {

// Bad or missing command-line input; always exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamOptions {
  std::optional<double> gamma, delta, epsilon, alpha, beta, q, a;
  std::string params_file;
  bool derive_epsilon = false;
};

struct ExpansionOptions {
  std::string gamma0 = "gamma";
  std::string frame = "z";
  std::optional<int> N;
  std::optional<int> K;
  bool lift = false;
};

struct CheckOptions {
  std::optional<double> residual_threshold;
  std::optional<double> oracle_threshold;
  std::vector<double> grid;
};

struct SolveOptions {
  std::optional<int> root_index;
  bool second_solution = false;
  bool sample = false;
  std::string from_json;
};

struct ExpandOptions {
  std::string format = "json";
};

struct CatalogOptions {
  std::string classes = "gamma";
  int n_min = 0;
  int n_max = 2;
  int seeds = 5;
  std::uint64_t seed = 1;
  int jobs = 1;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void add_param_options(CLI::App* app, ParamOptions& p) {
  app->add_option("--gamma", p.gamma, "exponent gamma at z = 0");
  app->add_option("--delta", p.delta, "exponent delta at z = 1");
  app->add_option("--epsilon", p.epsilon, "exponent epsilon at z = a");
  app->add_option("--alpha", p.alpha, "exponent alpha at infinity");
  app->add_option("--beta", p.beta, "exponent beta at infinity");
  app->add_option("--q", p.q, "accessory parameter");
  app->add_option("--a", p.a, "third finite singular point");
  app->add_option("--params-file", p.params_file,
                  "JSON document with the seven Heun fields");
  app->add_flag("--derive-epsilon", p.derive_epsilon,
                "set epsilon from the termination class (or the Fuchsian "
                "condition when no class is given)");
}

void add_expansion_options(CLI::App* app, ExpansionOptions& e, bool need_n) {
  app->add_option("--gamma0", e.gamma0, "expansion choice")
      ->check(CLI::IsMember({"gamma", "alpha", "beta"}));
  app->add_option("--frame", e.frame, "expansion variable")
      ->check(CLI::IsMember({"z", "1-z", "DirectZ", "OneMinusZ"}));
  auto* n = app->add_option("--N", e.N, "termination order N");
  if (need_n) n->required();
  app->add_flag("--lift", e.lift,
                "expand (z - a)^{eps - 1} u for eps = +N >= 2 instead of u");
}

void add_check_options(CLI::App* app, CheckOptions& c) {
  app->add_option("--residual-threshold", c.residual_threshold);
  app->add_option("--oracle-threshold", c.oracle_threshold);
  app->add_option("--grid", c.grid, "comma-separated verification grid")
      ->delimiter(',');
}

VerificationOptions to_verification_options(const CheckOptions& c) {
  VerificationOptions v;
  if (c.residual_threshold) v.residual_threshold = *c.residual_threshold;
  if (c.oracle_threshold) v.oracle_threshold = *c.oracle_threshold;
  v.grid = c.grid;
  return v;
}

struct ClassContext {
  Gamma0Choice choice;
  Frame frame;
  int N;
};

// Fills the seven parameters from --params-file and flags; exactly one
// exponent may be left out and is derived from the Fuchsian condition.
HeunParameters resolve_params(const ParamOptions& opts,
                              const std::optional<ClassContext>& cls,
                              bool q_required, json& inputs) {
  ParamOptions v = opts;
  if (!opts.params_file.empty()) {
    std::ifstream in(opts.params_file);
    if (!in) throw UsageError("cannot open --params-file " + opts.params_file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& ex) {
      throw UsageError(std::string("--params-file is not valid JSON: ") +
                       ex.what());
    }
    auto pick = [&](const char* key, std::optional<double>& slot,
                    const std::optional<double>& flag) {
      if (flag) {
        slot = flag;
      } else if (doc.contains(key)) {
        slot = doc.at(key).get<double>();
      }
    };
    pick("gamma", v.gamma, opts.gamma);
    pick("delta", v.delta, opts.delta);
    pick("epsilon", v.epsilon, opts.epsilon);
    pick("alpha", v.alpha, opts.alpha);
    pick("beta", v.beta, opts.beta);
    pick("q", v.q, opts.q);
    pick("a", v.a, opts.a);
  }

  if (!v.a) throw UsageError("--a is required");
  if (!v.q) {
    if (q_required) throw UsageError("--q is required");
    v.q = 0.0;
  }

  json adjustments = json::object();
  if (v.derive_epsilon) {
    if (cls) {
      // ε + γ' − γ₀ = −N, with γ' = δ in the 1 − z frame.
      const auto& lower = cls->frame == Frame::kDirectZ ? v.gamma : v.delta;
      const char* lower_flag =
          cls->frame == Frame::kDirectZ ? "--gamma" : "--delta";
      std::optional<double> g0;
      const char* g0_flag = lower_flag;
      switch (cls->choice) {
        case Gamma0Choice::kGamma: g0 = lower; break;
        case Gamma0Choice::kAlpha: g0 = v.alpha; g0_flag = "--alpha"; break;
        case Gamma0Choice::kBeta: g0 = v.beta; g0_flag = "--beta"; break;
      }
      if (!lower) throw UsageError(std::string(lower_flag) + " is required");
      if (!g0) throw UsageError(std::string(g0_flag) + " is required");
      v.epsilon = *g0 - *lower - cls->N;
    } else {
      if (!v.gamma || !v.delta || !v.alpha || !v.beta) {
        throw UsageError(
            "--derive-epsilon needs --gamma, --delta, --alpha and --beta");
      }
      v.epsilon = derive_epsilon(*v.gamma, *v.delta, *v.alpha, *v.beta);
    }
    adjustments["epsilon"] = {{"derived", *v.epsilon}};
  }

  const std::pair<const char*, std::optional<double>*> exponents[] = {
      {"--gamma", &v.gamma}, {"--delta", &v.delta}, {"--epsilon", &v.epsilon},
      {"--alpha", &v.alpha}, {"--beta", &v.beta}};
  std::vector<const char*> missing;
  for (const auto& [flag, slot] : exponents) {
    if (!*slot) missing.push_back(flag);
  }
  if (missing.size() > 1) {
    throw UsageError(std::string(missing.front()) + " is required");
  }
  auto fuchsian_gap = [&] {
    return 1.0 + *v.alpha + *v.beta - (*v.gamma + *v.delta + *v.epsilon);
  };
  if (missing.size() == 1) {
    const std::string flag = missing.front();
    std::optional<double>* slot = nullptr;
    for (const auto& [name, s] : exponents) {
      if (flag == name) slot = s;
    }
    *slot = 0.0;
    const bool at_infinity = flag == "--alpha" || flag == "--beta";
    **slot = at_infinity ? -fuchsian_gap() : fuchsian_gap();
    adjustments[flag.substr(2)] = {{"derived", **slot}};
  } else if (v.derive_epsilon &&
             std::abs(fuchsian_gap()) > kParameterTolerance) {
    // The class fixes ε; δ absorbs the Fuchsian condition.
    const double given = *v.delta;
    v.delta = derive_delta(*v.gamma, *v.epsilon, *v.alpha, *v.beta);
    adjustments["delta"] = {{"given", given}, {"used", *v.delta}};
  }

  const HeunParameters p = make_params(*v.gamma, *v.delta, *v.epsilon,
                                       *v.alpha, *v.beta, *v.q, *v.a);
  inputs["params"] = params_to_json(p);
  if (!adjustments.empty()) inputs["adjustments"] = adjustments;
  return p;
}

ExpansionSpec to_spec(const ExpansionOptions& e) {
  ExpansionSpec spec;
  spec.gamma0_choice = parse_gamma0(e.gamma0);
  spec.frame = parse_frame(e.frame);
  if (e.N) spec.mode = Terminating{*e.N};
  if (e.K) spec.mode = Truncated{*e.K};
  return spec;
}

void record_spec(const ExpansionOptions& e, json& inputs) {
  inputs["gamma0"] = e.gamma0;
  inputs["frame"] = to_string(parse_frame(e.frame));
  if (e.N) inputs["N"] = *e.N;
  if (e.K) inputs["K"] = *e.K;
  if (e.lift) inputs["lift"] = true;
}

// Target equation of the expansion: the original or its ε → 2 − ε lift.
HeunParameters expansion_target(const HeunParameters& p, bool lift) {
  if (!lift) return p;
  const double N = std::round(p.epsilon());
  if (N < 2.0 || std::abs(p.epsilon() - N) > 1e-9) {
    throw UsageError("--lift requires --epsilon to be an integer >= 2");
  }
  return map_positive_epsilon(p);
}

FiniteSolution assemble(const HeunParameters& p, const ExpansionSpec& spec,
                        bool lift, double q_target) {
  if (lift) return build_positive_epsilon_solution(p, spec, q_target);
  return build_finite_solution(p, spec, q_target);
}

int exit_for_error(const HeunError& err) {
  return is_validation_error(err.code()) ? kExitUsage : kExitBreakdown;
}

json error_json(const std::string& code, const std::string& message,
                std::optional<int> index = std::nullopt) {
  json e = {{"code", code}, {"message", message}};
  if (index) e["index"] = *index;
  return e;
}

// ---------------------------------------------------------------------------

int cmd_find_q(const ParamOptions& po, const ExpansionOptions& eo,
               const CheckOptions& co, json& doc) {
  json& inputs = doc["inputs"];
  record_spec(eo, inputs);
  const ExpansionSpec spec = to_spec(eo);
  if (eo.lift && po.derive_epsilon) {
    throw UsageError("--derive-epsilon cannot be combined with --lift");
  }
  const HeunParameters p = resolve_params(
      po, ClassContext{spec.gamma0_choice, spec.frame, *eo.N}, false, inputs);
  const HeunParameters target = expansion_target(p, eo.lift);
  if (eo.lift) inputs["transformed_params"] = params_to_json(target);

  const AccessoryPolynomial poly = q_polynomial(target, spec, *eo.N);
  const auto roots = solve_q(poly);
  const VerificationOptions vopts = to_verification_options(co);

  json out_roots = json::array();
  bool any_fail = false;
  bool any_breakdown = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    json entry = {{"index", i},
                  {"real", r.value.real()},
                  {"imag", r.value.imag()},
                  {"is_real", r.is_real},
                  {"relative_residual", r.relative_residual}};
    if (!r.is_real) {
      entry["verification"] = nullptr;
      entry["note"] = "complex root; real solution assembly skipped";
      out_roots.push_back(entry);
      continue;
    }
    const double q_target = r.value.real();
    entry["q"] = eo.lift ? lifted_q(p, q_target) : q_target;
    try {
      entry["continued_fraction_residual"] = continued_fraction_residual(
          target.with_q(q_target), spec, *eo.N);
    } catch (const HeunError& err) {
      entry["continued_fraction_residual"] = nullptr;
      entry["continued_fraction_error"] =
          error_json(std::string(to_string(err.code())), err.what(),
                     err.index());
    }
    try {
      const FiniteSolution fs = assemble(p, spec, eo.lift, q_target);
      const VerificationReport report = verify_solution(fs.form, vopts);
      entry["verification"] = report_to_json(report);
      any_fail |= report.verdict == Verdict::kFail;
    } catch (const HeunError& err) {
      entry["verification"] = nullptr;
      entry["error"] = error_json(std::string(to_string(err.code())),
                                  err.what(), err.index());
      any_breakdown = true;
    }
    out_roots.push_back(entry);
  }
  doc["outputs"] = {{"polynomial", polynomial_to_json(poly)},
                    {"roots", out_roots}};
  if (any_fail) return kExitVerificationFailure;
  if (any_breakdown) return kExitBreakdown;
  return kExitOk;
}

int cmd_solve(const ParamOptions& po, const ExpansionOptions& eo,
              const CheckOptions& co, const SolveOptions& so, json& doc) {
  json& inputs = doc["inputs"];
  record_spec(eo, inputs);
  const ExpansionSpec spec = to_spec(eo);
  if (eo.lift && po.derive_epsilon) {
    throw UsageError("--derive-epsilon cannot be combined with --lift");
  }
  if (!so.root_index && !po.q) {
    bool in_file = false;
    if (!po.params_file.empty()) {
      std::ifstream in(po.params_file);
      json file_doc;
      if (in && (in >> file_doc, true)) in_file = file_doc.contains("q");
    }
    if (!in_file) throw UsageError("--q or --root-index is required");
  }
  HeunParameters p = resolve_params(
      po, ClassContext{spec.gamma0_choice, spec.frame, *eo.N}, false, inputs);
  const HeunParameters target = expansion_target(p, eo.lift);

  double q_target = target.q();
  if (so.root_index) {
    inputs["root_index"] = *so.root_index;
    const auto roots = solve_q(q_polynomial(target, spec, *eo.N));
    const int idx = *so.root_index;
    if (idx < 0 || idx >= static_cast<int>(roots.size())) {
      throw UsageError("--root-index out of range (polynomial has " +
                       std::to_string(roots.size()) + " roots)");
    }
    if (!roots[idx].is_real) {
      throw HeunError(ErrorCode::kComplexExponents,
                      "selected root is complex; no real solution assembled");
    }
    q_target = roots[idx].value.real();
  }

  const VerificationOptions vopts = to_verification_options(co);
  const FiniteSolution fs = assemble(p, spec, eo.lift, q_target);
  VerificationReport report = verify_solution(fs.form, vopts);

  json outputs;
  outputs["solution"] = solution_to_json(fs.form);
  outputs["coefficients"] = coefficients_to_json(fs.coefficients);
  bool failed = report.verdict == Verdict::kFail;
  if (fs.reduced) {
    outputs["reduced"] = solution_to_json(*fs.reduced);
    const VerificationReport reduced_report =
        verify_solution(*fs.reduced, vopts);
    outputs["reduced_verification"] = report_to_json(reduced_report);
    failed |= reduced_report.verdict == Verdict::kFail;
  }

  if (so.second_solution) {
    if (eo.lift || spec.gamma0_choice != Gamma0Choice::kGamma ||
        spec.frame != Frame::kDirectZ) {
      throw UsageError(
          "--second-solution applies to --gamma0 gamma in the z frame");
    }
    const FiniteSolution second = build_second_solution(p, q_target);
    const VerificationReport second_report =
        verify_solution(second.form, vopts);
    report.wronskian_at_half = wronskian(fs.form, second.form, 0.5);
    outputs["second_solution"] = {
        {"solution", solution_to_json(second.form)},
        {"coefficients", coefficients_to_json(second.coefficients)},
        {"verification", report_to_json(second_report)}};
    outputs["wronskian_at_half"] = *report.wronskian_at_half;
    failed |= second_report.verdict == Verdict::kFail;
  }
  outputs["verification"] = report_to_json(report);

  if (so.sample) {
    json samples = json::array();
    for (double z : report.grid) {
      const SolutionValue v = evaluate(fs.form, z);
      samples.push_back({{"z", z}, {"u", v.u}, {"du", v.du}, {"d2u", v.d2u}});
    }
    outputs["samples"] = samples;
  }
  doc["outputs"] = outputs;
  return failed ? kExitVerificationFailure : kExitOk;
}

int cmd_verify(const ParamOptions& po, const ExpansionOptions& eo,
               const CheckOptions& co, const SolveOptions& so, json& doc) {
  if (so.from_json.empty()) {
    // Same inputs as solve; only the verification is reported.
    const int code = cmd_solve(po, eo, co, so, doc);
    json verification = doc["outputs"]["verification"];
    doc["outputs"] = {{"verification", verification}};
    return code;
  }
  json& inputs = doc["inputs"];
  inputs["from_json"] = so.from_json;
  std::ifstream in(so.from_json);
  if (!in) throw UsageError("cannot open --from-json " + so.from_json);
  json source;
  try {
    in >> source;
  } catch (const json::exception& ex) {
    throw UsageError(std::string("--from-json is not valid JSON: ") +
                     ex.what());
  }
  const json* form_json = &source;
  if (source.contains("outputs") && source["outputs"].contains("solution")) {
    form_json = &source["outputs"]["solution"];
  }
  SolutionForm form = [&] {
    try {
      return solution_from_json(*form_json);
    } catch (const json::exception& ex) {
      throw UsageError(std::string("--from-json has no solution form: ") +
                       ex.what());
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }();
  inputs["params"] = params_to_json(form.params);
  const VerificationReport report =
      verify_solution(form, to_verification_options(co));
  doc["outputs"] = {{"verification", report_to_json(report)}};
  return report.verdict == Verdict::kFail ? kExitVerificationFailure : kExitOk;
}

int cmd_expand(const ParamOptions& po, const ExpansionOptions& eo,
               const ExpandOptions& xo, json& doc, std::string& csv) {
  json& inputs = doc["inputs"];
  record_spec(eo, inputs);
  if (*eo.K < 1) throw UsageError("--K must be at least 1");
  const ExpansionSpec spec = to_spec(eo);
  const HeunParameters p = resolve_params(po, std::nullopt, true, inputs);
  const HeunParameters target = expansion_target(p, eo.lift);
  const RecurrenceContext ctx = make_context(target, spec);
  const CoefficientSequence seq = generate_coefficients(ctx, *eo.K);

  const double a = ctx.params().a();
  const double perron = std::abs((a - 1.0) / a);
  const auto ratio = tail_ratio(seq);
  json outputs = coefficients_to_json(seq);
  outputs["tail_ratio"] = ratio ? json(*ratio) : json(nullptr);
  outputs["perron_candidates"] = {1.0, perron};
  outputs["dominant_candidate"] = std::max(1.0, perron);
  doc["outputs"] = outputs;

  if (xo.format == "csv") {
    std::ostringstream os;
    os << "n,coefficient,ratio\n";
    for (std::size_t n = 0; n < seq.coefficients.size(); ++n) {
      os << n << ',' << format_double(seq.coefficients[n]) << ',';
      if (n > 0 && seq.coefficients[n - 1] != 0.0) {
        os << format_double(seq.coefficients[n] / seq.coefficients[n - 1]);
      }
      os << '\n';
    }
    csv = os.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CatalogRow {
  std::string cls;
  int N = 0;
  std::uint64_t seed = 0;
  std::optional<HeunParameters> params;
  int root_index = 0;
  double q = std::nan("");
  double residual_sup = std::nan("");
  Verdict verdict = Verdict::kInconclusive;
};

std::vector<CatalogRow> catalog_job(Gamma0Choice choice, int N,
                                    std::uint64_t seed) {
  std::vector<CatalogRow> rows(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    rows[i].cls = to_string(choice);
    rows[i].N = N;
    rows[i].seed = seed;
    rows[i].root_index = i;
  }
  try {
    const HeunParameters p = sample_terminating_params(choice, N, seed);
    for (auto& r : rows) r.params = p;
    const ExpansionSpec spec{choice, Frame::kDirectZ, Terminating{N}};
    const auto roots = solve_q(q_polynomial(p, spec, N));
    for (std::size_t i = 0; i < roots.size() && i < rows.size(); ++i) {
      auto& row = rows[i];
      row.q = roots[i].value.real();
      if (!roots[i].is_real) continue;
      try {
        const FiniteSolution fs = build_finite_solution(p, spec, row.q);
        const VerificationReport report = verify_solution(fs.form);
        row.residual_sup = report.residual_sup;
        row.verdict = report.verdict;
      } catch (const HeunError&) {
        row.verdict = Verdict::kInconclusive;
      }
    }
  } catch (const HeunError&) {
    // Rows stay Inconclusive.
  }
  return rows;
}

std::string write_catalog(const std::vector<std::vector<CatalogRow>>& jobs) {
  std::ostringstream os;
  os << "class,N,seed,gamma,delta,epsilon,alpha,beta,a,root_index,q,"
        "residual_sup,verdict\n";
  const double nan = std::nan("");
  for (const auto& job : jobs) {
    for (const auto& r : job) {
      const auto& p = r.params;
      os << r.cls << ',' << r.N << ',' << r.seed << ','
         << format_double(p ? p->gamma() : nan) << ','
         << format_double(p ? p->delta() : nan) << ','
         << format_double(p ? p->epsilon() : nan) << ','
         << format_double(p ? p->alpha() : nan) << ','
         << format_double(p ? p->beta() : nan) << ','
         << format_double(p ? p->a() : nan) << ',' << r.root_index << ','
         << format_double(r.q) << ',' << format_double(r.residual_sup) << ','
         << to_string(r.verdict) << '\n';
    }
  }
  return os.str();
}

int cmd_catalog(const CatalogOptions& co, std::string& csv) {
  std::vector<Gamma0Choice> choices;
  if (co.classes == "all") {
    choices = {Gamma0Choice::kGamma, Gamma0Choice::kAlpha,
               Gamma0Choice::kBeta};
  } else {
    choices = {parse_gamma0(co.classes)};
  }
  if (co.n_min < 0 || co.n_max < co.n_min) {
    throw UsageError("--N-min/--N-max must satisfy 0 <= N-min <= N-max");
  }
  if (co.seeds < 1) throw UsageError("--seeds must be positive");

  struct Job {
    Gamma0Choice choice;
    int N;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto choice : choices) {
    for (int N = co.n_min; N <= co.n_max; ++N) {
      for (int s = 0; s < co.seeds; ++s) {
        jobs.push_back({choice, N, co.seed + static_cast<std::uint64_t>(s)});
      }
    }
  }

  std::vector<std::vector<CatalogRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = catalog_job(jobs[i].choice, jobs[i].N, jobs[i].seed);
    }
  };
  const int threads = std::max(1, co.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  csv = write_catalog(results);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Hypergeometric expansions of the general Heun equation"};
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("--output", output_path, "write the document to this file");

  ParamOptions params;
  ExpansionOptions expansion;
  CheckOptions check;
  SolveOptions solve;
  ExpandOptions expand;
  CatalogOptions catalog;

  auto* find_q = app.add_subcommand("find-q", "accessory parameters that "
                                              "terminate the expansion");
  add_param_options(find_q, params);
  add_expansion_options(find_q, expansion, true);
  add_check_options(find_q, check);

  auto* solve_cmd = app.add_subcommand("solve", "assemble and verify a "
                                                "finite-sum solution");
  add_param_options(solve_cmd, params);
  add_expansion_options(solve_cmd, expansion, true);
  add_check_options(solve_cmd, check);
  solve_cmd->add_option("--root-index", solve.root_index,
                        "use the i-th root of the accessory polynomial");
  solve_cmd->add_flag("--second-solution", solve.second_solution,
                      "add the 1 - z frame solution and the Wronskian");
  solve_cmd->add_flag("--sample", solve.sample,
                      "emit u, u', u'' on the verification grid");

  auto* verify_cmd = app.add_subcommand("verify", "verify a solution form");
  add_param_options(verify_cmd, params);
  add_expansion_options(verify_cmd, expansion, false);
  add_check_options(verify_cmd, check);
  verify_cmd->add_option("--from-json", solve.from_json,
                         "solve output or bare solution form");
  verify_cmd->add_option("--root-index", solve.root_index);

  auto* expand_cmd = app.add_subcommand("expand", "expansion coefficients "
                                                  "a_0..a_K");
  add_param_options(expand_cmd, params);
  add_expansion_options(expand_cmd, expansion, false);
  expand_cmd->get_option("--N")->description("unused by expand");
  expand_cmd->add_option("--K", expansion.K, "number of coefficients")
      ->required();
  expand_cmd->add_option("--format", expand.format)
      ->check(CLI::IsMember({"json", "csv"}));

  auto* catalog_cmd = app.add_subcommand("catalog", "sweep closed-form cases");
  catalog_cmd->add_option("--class", catalog.classes)
      ->check(CLI::IsMember({"gamma", "alpha", "beta", "all"}));
  catalog_cmd->add_option("--N-min", catalog.n_min);
  catalog_cmd->add_option("--N-max", catalog.n_max);
  catalog_cmd->add_option("--seeds", catalog.seeds, "parameter sets per N");
  catalog_cmd->add_option("--seed", catalog.seed, "first seed");
  catalog_cmd->add_option("--jobs", catalog.jobs, "worker threads");

  json doc;
  std::string csv;
  int code = kExitOk;
  std::string command = "unknown";
  try {
    app.parse(argc, argv);
    command = app.get_subcommands().front()->get_name();
    doc["command"] = command;
    doc["inputs"] = json::object();
    if (command == "find-q") {
      code = cmd_find_q(params, expansion, check, doc);
    } else if (command == "solve") {
      code = cmd_solve(params, expansion, check, solve, doc);
    } else if (command == "verify") {
      if (solve.from_json.empty() && !expansion.N) {
        throw UsageError("--from-json or --N is required");
      }
      code = cmd_verify(params, expansion, check, solve, doc);
    } else if (command == "expand") {
      code = cmd_expand(params, expansion, expand, doc, csv);
    } else if (command == "catalog") {
      code = cmd_catalog(catalog, csv);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    doc = {{"command", command},
           {"inputs", json::object()},
           {"outputs", nullptr},
           {"error", error_json("UsageError", e.what())}};
    code = kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    doc["outputs"] = nullptr;
    doc["error"] = error_json("UsageError", e.what());
    code = kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    doc["outputs"] = nullptr;
    doc["error"] = error_json("UsageError", e.what());
    code = kExitUsage;
  } catch (const HeunError& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    doc["outputs"] = nullptr;
    doc["error"] =
        error_json(std::string(to_string(e.code())), e.what(), e.index());
    code = exit_for_error(e);
  } catch (const json::exception& e) {
    err << e.what() << '\n';
    doc["outputs"] = nullptr;
    doc["error"] = error_json("UsageError", e.what());
    code = kExitUsage;
  }

  const std::string text = !csv.empty() ? csv : doc.dump(2) + "\n";
  if (!output_path.empty()) {
    std::ofstream file(output_path);
    if (!file) {
      err << "cannot write --output " << output_path << '\n';
      return kExitUsage;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv{"heunx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace heun::cli
