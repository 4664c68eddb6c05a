#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "meanlab/bisymmetry.hpp"
#include "meanlab/catalog.hpp"
#include "meanlab/cyclic.hpp"
#include "meanlab/dsl.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/gauss.hpp"
#include "meanlab/generator.hpp"
#include "meanlab/means.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/sampling.hpp"

namespace meanlab::cli {

namespace {

// Pass thresholds of the verify checks when --check-tol is not given.
constexpr double kM1Tolerance = 1e-7;
constexpr double kGbsTolerance = 1e-7;
constexpr double kBsTolerance = 1e-9;
constexpr double kAsTolerance = 1e-9;
constexpr double kAffineTolerance = 1e-6;
constexpr double kEqualValueTolerance = 1e-8;
constexpr double kCharacterizeTolerance = 1e-7;
constexpr int kAffineSamples = 64;

/// Usage, parse and domain problems detected before any computation runs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto logger = std::make_shared<spdlog::logger>("meanlab", std::make_shared<spdlog::sinks::ostream_sink_st>(err));
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("MEANLAB_LOG");
  const std::string level = env ? env : "quiet";
  if (level == "trace") {
    logger->set_level(spdlog::level::trace);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else {
    logger->set_level(spdlog::level::off);
  }
  return logger;
}

Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("interval must look like lo,hi: '" + text + "'");
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw UsageError("interval endpoint is not a number: '" + part + "'");
    return v;
  };
  try {
    return Interval::open(number(text.substr(0, comma)), number(text.substr(comma + 1)));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<Generator> parse_generators(const std::vector<std::string>& texts, const Interval& domain) {
  std::vector<Generator> out;
  for (const auto& text : texts) {
    try {
      out.push_back(dsl::parse_generator(text, domain));
    } catch (const ParseError& e) {
      throw UsageError("generator '" + text + "': " + e.what());
    } catch (const Error& e) {
      throw UsageError("generator '" + text + "': " + e.what());
    }
  }
  return out;
}

bool all_same_text(const std::vector<std::string>& texts) {
  return std::all_of(texts.begin(), texts.end(), [&](const std::string& t) { return t == texts.front(); });
}

Json config_json(const ExperimentConfig& c, const std::string& command, const std::vector<double>& args,
                 const std::string& which) {
  Json j;
  j["command"] = command;
  if (!which.empty()) j["check"] = which;
  j["interval"] = c.interval;
  j["generators"] = c.generators;
  if (!c.generators2.empty()) j["generators2"] = c.generators2;
  if (!c.demo.empty()) j["demo"] = c.demo;
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["check_tolerance"] = c.check_tolerance ? Json(*c.check_tolerance) : Json(nullptr);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["format"] = to_string(c.format);
  if (!args.empty()) j["arguments"] = args;
  return j;
}

std::string verdict(bool passed) { return passed ? "pass" : "fail"; }

struct Context {
  ExperimentConfig config;
  Interval domain;
  std::vector<Generator> generators;
  spdlog::logger& log;

  GaussOptions gauss() const { return {config.tolerance, config.max_iterations}; }
  double check_tol(double fallback) const { return config.check_tolerance.value_or(fallback); }

  GeneratorSystem system(const char* command) const {
    if (generators.size() < 2) {
      throw UsageError(std::string(command) + " needs at least two --gen generators");
    }
    return GeneratorSystem(generators);
  }

  /// The single generator of a symmetric quasi-arithmetic mean.
  const Generator& single_generator(const char* command) const {
    if (generators.empty() || !all_same_text(config.generators)) {
      throw UsageError(std::string(command) + " requires a symmetric single-generator mean (one --gen, or repeated identical --gen)");
    }
    return generators.front();
  }
};

// eval --------------------------------------------------------------------

void cmd_eval(const Context& ctx, const std::vector<double>& xs, RunReport& report) {
  if (ctx.generators.empty()) throw UsageError("eval needs at least one --gen");
  if (xs.empty()) throw UsageError("eval needs at least one argument");
  for (double x : xs) {
    if (!ctx.domain.contains(x)) {
      std::ostringstream msg;
      msg << "argument " << x << " outside " << ctx.domain.to_string();
      throw UsageError(msg.str());
    }
  }
  std::optional<Mean> mean;
  if (ctx.generators.size() == 1) {
    mean = means::quasi_arithmetic(ctx.generators.front());
  } else {
    if (xs.size() != ctx.generators.size()) {
      throw UsageError("arity error: " + std::to_string(ctx.generators.size()) + " generators need " +
                       std::to_string(ctx.generators.size()) + " arguments, got " + std::to_string(xs.size()));
    }
    mean = means::generalized_quasi_arithmetic(GeneratorSystem(ctx.generators));
  }

  const MeanPropertyReport check = mean_property_check(*mean, xs);
  if (!check.error.empty()) throw Error(check.error);
  ResultRow row;
  row.check_name = "mean_bounds";
  row.lhs = check.value;
  row.verdict = verdict(check.passed());
  row.extra = {{"min", check.min}, {"max", check.max}};
  report.results.push_back(row);

  report.summary["mean"] = mean->label();
  report.summary["value"] = check.value;
  report.summary["min"] = check.min;
  report.summary["max"] = check.max;
  report.summary["bounds"] = check.bounds_ok ? "pass" : "fail";
  report.summary["strict"] = !check.strict_applicable ? "equal-arguments" : (check.strict_ok ? "pass" : "fail");
}

// compose -----------------------------------------------------------------

void add_trace_rows(const IterationTrace& trace, RunReport& report) {
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    const auto& it = trace.iterates[k];
    const auto [lo, hi] = std::minmax_element(it.begin(), it.end());
    ResultRow row;
    row.check_name = "iterate";
    row.sample_index = k;
    row.lhs = *lo;
    row.rhs = *hi;
    row.residual = trace.gaps[k];
    row.verdict = "gap";
    row.extra = {{"point", it}};
    report.results.push_back(std::move(row));
  }
}

/// Returns true when the iteration converged.
bool cmd_compose(const Context& ctx, const std::vector<double>& xs, RunReport& report) {
  if (ctx.generators.empty()) throw UsageError("compose needs at least one --gen");
  for (double x : xs) {
    if (!ctx.domain.contains(x)) throw UsageError("compose argument outside " + ctx.domain.to_string());
  }
  std::optional<Mean> mean;
  std::optional<Generator> closed_form;
  if (ctx.generators.size() == 1) {
    if (xs.size() < 2) throw UsageError("compose needs at least two arguments");
    mean = means::quasi_arithmetic(ctx.generators.front(), xs.size());
    closed_form = ctx.generators.front();
  } else {
    if (xs.size() != ctx.generators.size()) {
      throw UsageError("arity error: " + std::to_string(ctx.generators.size()) + " generators need " +
                       std::to_string(ctx.generators.size()) + " arguments, got " + std::to_string(xs.size()));
    }
    const GeneratorSystem system(ctx.generators);
    mean = means::generalized_quasi_arithmetic(system);
    closed_form = sum_generators(system);
  }
  const MeanTypeMapping mapping = cyclic_mapping(*mean);
  report.summary["mapping"] = "cyclic mapping of " + mean->label();

  try {
    const GaussResult result = gauss_iterate(mapping, xs, ctx.gauss());
    const double expected = qam_eval(*closed_form, xs);
    ResultRow row;
    row.check_name = "compose";
    row.lhs = result.limit;
    row.rhs = expected;
    row.residual = std::abs(result.limit - expected);
    row.verdict = "converged";
    report.results.push_back(row);
    report.summary["limit"] = result.limit;
    report.summary["closed_form"] = expected;
    report.summary["iterations"] = result.trace.iterations_used;
    report.summary["final_gap"] = result.trace.gaps.back();
    report.summary["converged"] = true;
    if (ctx.config.trace) add_trace_rows(result.trace, report);
    ctx.log.info("converged in {} iterations", result.trace.iterations_used);
    return true;
  } catch (const GaussConvergenceError& e) {
    report.summary["converged"] = false;
    report.summary["error"] = e.what();
    report.summary["iterations"] = e.trace().iterations_used;
    report.summary["final_gap"] = e.trace().gaps.back();
    add_trace_rows(e.trace(), report);
    ctx.log.info("{}", e.what());
    return false;
  }
}

// verify ------------------------------------------------------------------

void verify_m1(const Context& ctx, RunReport& report) {
  CyclicLimitOptions options;
  options.samples = ctx.config.samples;
  options.tol = ctx.check_tol(kM1Tolerance);
  options.gauss = ctx.gauss();
  options.seed = ctx.config.seed;
  const CyclicLimitReport m1 = cyclic_limit_check(ctx.system("verify m1"), options);
  for (std::size_t i = 0; i < m1.samples.size(); ++i) {
    const auto& s = m1.samples[i];
    ResultRow row{"m1", i, s.gauss, s.closed_form, s.residual, verdict(s.residual <= options.tol)};
    row.extra = {{"point", s.x}, {"iterations", s.iterations}};
    report.results.push_back(std::move(row));
  }
  report.summary["passed"] = m1.passed;
  report.summary["max_residual"] = m1.max_residual;
  report.summary["threshold"] = options.tol;
  report.summary["worst_sample"] = m1.worst_index;
}

template <class Check>
void verify_matrices(const Context& ctx, const char* name, std::size_t n, double tol, Check&& check,
                     RunReport& report) {
  const auto count = static_cast<std::size_t>(std::max(ctx.config.samples, 0));
  std::vector<EquationReport> outcomes(count);
  parallel_for(count, [&](std::size_t i) { outcomes[i] = check(random_matrix(ctx.domain, n, ctx.config.seed, i)); });

  double max_residual = 0.0;
  std::optional<std::size_t> first_failure;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& r = outcomes[i];
    ResultRow row{name, i, r.lhs, r.rhs, r.residual, verdict(r.passed)};
    row.extra = {{"matrix", r.matrix.to_rows()}};
    report.results.push_back(std::move(row));
    max_residual = std::max(max_residual, r.residual);
    if (!r.passed && !first_failure) first_failure = i;
  }
  report.summary["passed"] = !first_failure.has_value();
  report.summary["max_residual"] = max_residual;
  report.summary["threshold"] = tol;
  if (first_failure) report.summary["counterexample"] = outcomes[*first_failure].matrix.to_rows();
}

void verify_gbs(const Context& ctx, RunReport& report) {
  const GeneratorSystem system = ctx.system("verify gbs");
  const double tol = ctx.check_tol(kGbsTolerance);
  verify_matrices(
      ctx, "gbs", system.size(), tol,
      [&](const InputMatrix& m) { return generalized_bisymmetry_check(system, m, tol); }, report);
}

void verify_bs(const Context& ctx, RunReport& report) {
  const Generator& f = ctx.single_generator("verify bs");
  const std::size_t n = std::max<std::size_t>(2, ctx.generators.size());
  const Mean mean = means::quasi_arithmetic(f, n);
  const double tol = ctx.check_tol(kBsTolerance);
  report.summary["mean"] = mean.label();
  verify_matrices(ctx, "bs", n, tol, [&](const InputMatrix& m) { return bisymmetry_check(mean, m, tol); }, report);
}

void verify_as(const Context& ctx, RunReport& report) {
  static constexpr std::pair<std::size_t, std::size_t> kArities[] = {{1, 2}, {2, 2}, {2, 3}};
  const Generator& f = ctx.single_generator("verify as");
  const double tol = ctx.check_tol(kAsTolerance);
  const auto count = static_cast<std::size_t>(std::max(ctx.config.samples, 0));
  std::vector<EquationReport> outcomes(count);
  std::vector<std::vector<double>> xs(count), ys(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto [n, m] = kArities[i % std::size(kArities)];
    SampleStream rng(ctx.config.seed, i);
    xs[i] = rng.point(ctx.domain, n);
    ys[i] = rng.point(ctx.domain, m);
  }
  parallel_for(count, [&](std::size_t i) { outcomes[i] = associativity_check(f, xs[i], ys[i], tol); });

  double max_residual = 0.0;
  bool passed = true;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& r = outcomes[i];
    ResultRow row{"as", i, r.lhs, r.rhs, r.residual, verdict(r.passed)};
    row.extra = {{"xs", xs[i]}, {"ys", ys[i]}};
    report.results.push_back(std::move(row));
    max_residual = std::max(max_residual, r.residual);
    passed = passed && r.passed;
  }
  report.summary["mean"] = "A[" + f.label() + "]";
  report.summary["passed"] = passed;
  report.summary["max_residual"] = max_residual;
  report.summary["threshold"] = tol;
}

void verify_equality(const Context& ctx, RunReport& report) {
  if (ctx.generators.empty() || ctx.config.generators2.size() != ctx.generators.size()) {
    throw UsageError("verify equality needs as many --gen2 as --gen generators");
  }
  const std::vector<Generator> others = parse_generators(ctx.config.generators2, ctx.domain);
  const double tol = ctx.check_tol(kAffineTolerance);
  const std::size_t n = ctx.generators.size();

  bool affine = true;
  std::vector<double> slopes;
  std::vector<double> shifts;
  for (std::size_t i = 0; i < n; ++i) {
    const AffineFit fit = affine_fit(ctx.generators[i], others[i], kAffineSamples);
    const bool ok = fit.residual <= tol && fit.a > 0.0;
    affine = affine && ok;
    slopes.push_back(fit.a);
    shifts.push_back(fit.b);
    report.results.push_back({"affine_fit", i, fit.a, fit.b, fit.residual, verdict(ok)});
  }
  // Equal generalized means need one common slope across all generators.
  for (double a : slopes) {
    if (std::abs(a - slopes.front()) > tol * std::max(1.0, std::abs(slopes.front()))) affine = false;
  }

  std::optional<Mean> lhs_mean;
  std::optional<Mean> rhs_mean;
  std::size_t arity = n;
  if (n == 1) {
    arity = 2;
    lhs_mean = means::quasi_arithmetic(ctx.generators.front(), arity);
    rhs_mean = means::quasi_arithmetic(others.front(), arity);
  } else {
    lhs_mean = means::generalized_quasi_arithmetic(GeneratorSystem(ctx.generators));
    rhs_mean = means::generalized_quasi_arithmetic(GeneratorSystem(others));
  }
  double max_discrepancy = 0.0;
  const auto count = static_cast<std::size_t>(std::max(ctx.config.samples, 0));
  for (std::size_t i = 0; i < count; ++i) {
    SampleStream rng(ctx.config.seed, i);
    const std::vector<double> x = rng.point(ctx.domain, arity);
    const double a = (*lhs_mean)(x);
    const double b = (*rhs_mean)(x);
    const double d = std::abs(a - b);
    max_discrepancy = std::max(max_discrepancy, d);
    ResultRow row{"mean_value", i, a, b, d, verdict(d <= kEqualValueTolerance)};
    row.extra = {{"point", x}};
    report.results.push_back(std::move(row));
  }

  report.summary["equal"] = affine;
  report.summary["verdict"] = affine ? "equal (affine)" : "not equal";
  report.summary["a"] = slopes.front();
  report.summary["b"] = shifts;
  report.summary["max_mean_discrepancy"] = max_discrepancy;
  report.summary["affine_threshold"] = tol;
}

void verify_characterize(const Context& ctx, RunReport& report) {
  std::optional<Mean> mean;
  if (!ctx.config.demo.empty()) {
    try {
      mean = catalog::demo_mean(ctx.config.demo);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (ctx.generators.size() >= 2) {
    mean = means::generalized_quasi_arithmetic(GeneratorSystem(ctx.generators));
  } else if (ctx.generators.size() == 1) {
    mean = means::quasi_arithmetic(ctx.generators.front(), 2);
  } else {
    throw UsageError("verify characterize needs --gen generators or --demo");
  }

  CharacterizeConfig config;
  config.tol = ctx.check_tol(kCharacterizeTolerance);
  config.gauss = ctx.gauss();
  config.search.seed = ctx.config.seed;
  config.search.random_trials = std::max(ctx.config.samples, 1);
  const CharacterizationVerdict v = characterize(*mean, config);

  for (std::size_t i = 0; i < v.phases.size(); ++i) {
    const PhaseReport& p = v.phases[i];
    ResultRow row;
    row.check_name = std::string("characterize:") + to_string(p.condition);
    row.sample_index = i;
    row.residual = p.max_residual;
    row.verdict = verdict(p.passed);
    if (p.witness_equation) {
      row.lhs = p.witness_equation->lhs;
      row.rhs = p.witness_equation->rhs;
      row.residual = p.witness_equation->residual;
      row.extra["witness_matrix"] = p.witness_equation->matrix.to_rows();
    }
    if (!p.witness_point.empty()) row.extra["witness_point"] = p.witness_point;
    row.extra["trials"] = p.trials_run;
    row.extra["detail"] = p.detail;
    report.results.push_back(std::move(row));
  }
  report.summary["mean"] = mean->label();
  report.summary["verdict"] = v.consistent ? "consistent" : "refuted";
  if (v.failing_condition) report.summary["failing_condition"] = to_string(*v.failing_condition);
  const PhaseReport& gbs = v.phase(Condition::kGeneralizedBisymmetric);
  if (gbs.witness_equation) {
    report.summary["witness_matrix"] = gbs.witness_equation->matrix.to_rows();
    report.summary["witness_residual"] = gbs.witness_equation->residual;
  }
  report.summary["note"] = v.summary;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  std::string format_name = "text";
  std::vector<double> positional;
  std::string which;

  CLI::App app{"meanlab: generalized quasi-arithmetic means, Gauss composition and functional-equation checks",
               "meanlab"};
  app.option_defaults()->always_capture_default();
  app.add_option("--interval", config.interval, "Open interval lo,hi shared by all generators");
  app.add_option("--gen", config.generators, "Generator expression in x (repeatable, ordered)")->take_all();
  app.add_option("--gen2", config.generators2, "Second generator list for `verify equality`")->take_all();
  app.add_option("--demo", config.demo, "Built-in non-quasi-arithmetic mean for `verify characterize`")
      ->check(CLI::IsMember(catalog::demo_names()));
  app.add_option("--tol", config.tolerance, "Gauss iteration gap tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", config.max_iterations, "Gauss iteration budget")->check(CLI::NonNegativeNumber);
  app.add_option("--check-tol", config.check_tolerance, "Pass threshold for verify checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", config.samples, "Randomized instances for verify")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed of the deterministic sample streams");
  app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--output", config.output, "Write the report to this path instead of stdout");
  app.add_flag("--trace", config.trace, "Include the full iteration trace in compose reports");
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate the (generalized) quasi-arithmetic mean");
  eval->add_option("xs", positional, "Arguments")->required();
  auto* compose = app.add_subcommand("compose", "Gauss iteration of the cyclic mean-type mapping");
  compose->add_option("xs", positional, "Starting point")->required();
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("check", which, "Which check")
      ->required()
      ->check(CLI::IsMember({"m1", "gbs", "bs", "as", "equality", "characterize"}));
  for (auto* sub : {eval, compose, verify}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  config.format = parse_format(format_name);

  auto logger = make_logger(err);
  const auto started = std::chrono::steady_clock::now();
  RunReport report;
  std::string command;
  if (eval->parsed()) command = "eval";
  if (compose->parsed()) command = "compose";
  if (verify->parsed()) command = "verify";
  report.command = verify->parsed() ? "verify " + which : command;
  report.config = config_json(config, command, positional, which);

  int code = kSuccess;
  try {
    const Interval domain = parse_interval(config.interval);
    Context ctx{config, domain, parse_generators(config.generators, domain), *logger};
    logger->info("{} on {} with {} generator(s)", report.command, domain.to_string(), ctx.generators.size());

    if (command == "eval") {
      try {
        cmd_eval(ctx, positional, report);
      } catch (const ArityError& e) {
        throw UsageError(e.what());
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    } else if (command == "compose") {
      if (!cmd_compose(ctx, positional, report)) code = kConvergenceFailure;
    } else if (which == "m1") {
      verify_m1(ctx, report);
    } else if (which == "gbs") {
      verify_gbs(ctx, report);
    } else if (which == "bs") {
      verify_bs(ctx, report);
    } else if (which == "as") {
      verify_as(ctx, report);
    } else if (which == "equality") {
      verify_equality(ctx, report);
    } else {
      verify_characterize(ctx, report);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return command == "verify" ? kOperationalFailure : kConvergenceFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kOperationalFailure;
  }

  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  if (config.output.empty()) {
    write_report(report, config.format, out);
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "error: cannot open output file '" << config.output << "'\n";
      return kOperationalFailure;
    }
    write_report(report, config.format, file);
    if (!file) {
      err << "error: failed writing '" << config.output << "'\n";
      return kOperationalFailure;
    }
  }
  return code;
}

}  // namespace meanlab::cli
