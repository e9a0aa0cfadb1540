#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cli/checks.hpp"
#include "pompeiu/decision.hpp"
#include "pompeiu/exact_field.hpp"
#include "pompeiu/functions.hpp"
#include "pompeiu/interval_set.hpp"
#include "pompeiu/json_io.hpp"
#include "pompeiu/verifier.hpp"

namespace pompeiu::cli {

namespace {

using io::Json;

/// Raised for bad flag values; maps to kInputError.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::string set_source;
  std::optional<std::int64_t> field_d;
  double constant = 0.0;
  bool constant_given = false;
  std::string family;
  std::string grid;
  std::optional<int> random_count;
  std::uint64_t seed = 42;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
  std::vector<std::string> only;
  std::string function_source;
  std::string seed_poly;
  int max_depth = RecurrenceOptions{}.max_depth;
  std::string trace;
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON, or @path to a JSON file.
Json load_json(const std::string& source, const char* flag) {
  if (source.empty()) throw UsageError(std::string(flag) + " is required");
  std::string text = source.front() == '@' ? read_file(source.substr(1)) : source;
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string(flag) + ": invalid JSON: " + e.what());
  }
}

double parse_double(std::string_view text, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

struct Window {
  double x0;
  double x1;
  int n;
};

/// "x0:x1:n" with x0 < x1 and n >= 2.
Window parse_window(const std::string& text, const char* flag) {
  auto a = text.find(':');
  auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError(std::string(flag) + " expects x0:x1:n");
  Window w{parse_double(std::string_view(text).substr(0, a), flag),
           parse_double(std::string_view(text).substr(a + 1, b - a - 1), flag),
           static_cast<int>(parse_double(std::string_view(text).substr(b + 1), flag))};
  if (!(w.x1 > w.x0) || w.n < 2) throw UsageError(std::string(flag) + " needs x0 < x1 and n >= 2");
  return w;
}

IntervalSet load_set(const Config& cfg) {
  return io::interval_set_from_json(load_json(cfg.set_source, "--set"), cfg.field_d);
}

IsometryFamily parse_family(const std::string& name) {
  if (name == "translations") return IsometryFamily::translations;
  if (name == "full") return IsometryFamily::full;
  throw UsageError("--family must be translations or full");
}

Sampler make_sampler(const Config& cfg) {
  if (!cfg.grid.empty()) {
    Window w = parse_window(cfg.grid, "--grid");
    return GridSampler{w.x0, w.x1, w.n};
  }
  RandomSampler r;
  r.seed = cfg.seed;
  if (cfg.random_count) r.count = *cfg.random_count;
  if (r.count < 1) throw UsageError("--random needs a positive count");
  return r;
}

QuadratureConfig make_quadrature(const Config& cfg) {
  QuadratureConfig q;
  if (cfg.abs_tol) q.abs_tol = *cfg.abs_tol;
  if (cfg.rel_tol) q.rel_tol = *cfg.rel_tol;
  q.validate();
  return q;
}

SeedSpec make_seed(const Config& cfg, const IntervalSet& set) {
  std::optional<double> target;
  if (cfg.constant_given) target = cfg.constant;
  if (cfg.seed_poly.empty()) return default_seed(set, target);
  SeedSpec seed;
  seed.target = target;
  std::stringstream ss(cfg.seed_poly);
  std::string term;
  while (std::getline(ss, term, ',')) seed.polynomial.coefficients.push_back(QField::parse(term));
  return seed;
}

Json trace_json(const Function& f, const Window& w) {
  Json xs = Json::array();
  Json ys = Json::array();
  for (int i = 0; i < w.n; ++i) {
    double x = w.x0 + (w.x1 - w.x0) * i / (w.n - 1);
    xs.push_back(x);
    ys.push_back(f(x));
  }
  return {{"x", xs}, {"y", ys}};
}

CommandResult emit(const Config& cfg, const std::string& body, int code) {
  CommandResult r;
  r.exit_code = code;
  if (cfg.out.empty()) {
    r.output = body;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out || !(out << body)) throw UsageError("cannot write '" + cfg.out + "'");
  }
  return r;
}

CommandResult cmd_decide(const Config& cfg) {
  TwoIntervalParams params = normalize_two(load_set(cfg));
  Verdict v = decide_two_interval(params, cfg.constant);
  spdlog::info("decide: {} ({})", v.holds ? "holds" : "fails", to_string(v.reason));
  return emit(cfg, io::dump(io::to_json(v)) + "\n", v.holds ? kOk : kPropertyFails);
}

CommandResult cmd_construct(const Config& cfg) {
  IntervalSet set = load_set(cfg);
  IsometryFamily family = parse_family(cfg.family.empty() ? "full" : cfg.family);
  Json report;
  std::optional<Function> f;
  if (family == IsometryFamily::translations) {
    RecurrenceOptions options;
    options.max_depth = cfg.max_depth;
    f = construct_recurrence_extension_n(set, make_seed(cfg, set), options);
    report["construction"] = "recurrence";
  } else if (set.size() == 2) {
    Verdict v = decide_two_interval(normalize_two(set), cfg.constant);
    if (v.holds) {
      throw NotApplicable("the set has the Pompeiu property for the full isometry group (" +
                          std::string(to_string(v.reason)) + ")");
    }
    f = *v.counterexample;
    report["construction"] = to_string(v.reason);
    report["verdict"] = io::to_json(v);
  } else if (set.size() == 3) {
    auto params = match_three(set);
    if (!params) throw NotApplicable("three-interval construction needs equal gaps");
    f = construct_three_interval_counterexample(*params, cfg.constant);
    report["construction"] = "three_interval";
  } else {
    throw NotApplicable("full-isometry construction needs two or three intervals");
  }
  Window w{0.0, 0.0, 201};
  if (cfg.trace.empty()) {
    double a = set.first().to_double();
    double b = set.last().to_double();
    w.x0 = a - (b - a);
    w.x1 = b + (b - a);
  } else {
    w = parse_window(cfg.trace, "--trace");
  }
  report["family"] = to_string(family);
  report["set"] = io::to_json(set);
  report["descriptor"] = io::to_json(*f);
  report["trace"] = trace_json(*f, w);
  spdlog::info("construct: {} on {} intervals", f->kind(), set.size());
  return emit(cfg, io::dump(report) + "\n", kOk);
}

CommandResult cmd_verify(const Config& cfg) {
  Json input = load_json(cfg.function_source, "--function");
  // Accept construct/decide output as well as a bare descriptor.
  Json descriptor = input;
  std::string family_name = cfg.family;
  std::optional<IntervalSet> set;
  if (input.is_object() && input.contains("descriptor")) {
    descriptor = input.at("descriptor");
    if (family_name.empty() && input.contains("family")) family_name = input.at("family");
    if (input.contains("set")) set = io::interval_set_from_json(input.at("set"), cfg.field_d);
  } else if (input.is_object() && input.contains("counterexample")) {
    descriptor = input.at("counterexample");
    if (family_name.empty()) family_name = "full";
  }
  if (descriptor.is_null()) throw UsageError("--function carries no function descriptor");
  Function f = io::function_from_json(descriptor);
  if (!cfg.set_source.empty()) {
    set = load_set(cfg);
  } else if (!set) {
    if (const auto* ext = f.get_if<RecurrenceExtension>()) set = ext->set();
  }
  if (!set) throw UsageError("--set is required");
  IsometryFamily family = parse_family(family_name.empty() ? "translations" : family_name);

  InvarianceReport report =
      verify_invariance(f, *set, family, make_sampler(cfg), make_quadrature(cfg), cfg.threads);
  spdlog::info("verify: C ~ {}, max deviation {}, relative {}", report.c_estimate,
               report.max_abs_deviation, report.relative_deviation);
  int code = kOk;
  if (!report.quadrature_converged) {
    code = kQuadratureBudget;
  } else if (!(report.relative_deviation <= cfg.tol)) {
    code = kVerificationFailed;
  }
  std::string body;
  if (cfg.format == "csv") {
    body = io::to_csv(report);
  } else {
    Json j = io::to_json(report);
    j["tol"] = cfg.tol;
    j["passed"] = code == kOk;
    body = io::dump(j) + "\n";
  }
  CommandResult r = emit(cfg, body, code);
  if (code == kQuadratureBudget) r.error = "quadrature budget exhausted; report is partial\n";
  if (code == kVerificationFailed) {
    r.error = "relative deviation " + io::format_double(report.relative_deviation) +
              " exceeds tolerance " + io::format_double(cfg.tol) + "\n";
  }
  return r;
}

CommandResult cmd_demo(const Config& cfg) {
  CheckOptions options{cfg.seed, cfg.threads};
  std::vector<CheckResult> results = run_checks(cfg.only, options);
  Json checks = Json::array();
  std::vector<std::string> failed;
  for (const CheckResult& c : results) {
    spdlog::info("demo: {} {} ({:.2f} s)", c.passed ? "PASS" : "FAIL", c.name, c.seconds);
    checks.push_back(to_json(c));
    if (!c.passed) failed.push_back(c.name);
  }
  Json report = {{"seed", cfg.seed}, {"checks", checks}, {"failed", failed},
                 {"passed", failed.empty()}};
  CommandResult r = emit(cfg, io::dump(report) + "\n", failed.empty() ? kOk : kVerificationFailed);
  for (const std::string& name : failed) r.error += "failed check: " + name + "\n";
  return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Pompeiu property for finite unions of intervals", "pompeiu"};
  app.require_subcommand(1);
  Config cfg;

  auto add_set = [&](CLI::App* sub) {
    sub->add_option("--set", cfg.set_source, "interval set as JSON, or @file");
    sub->add_option("--field-d", cfg.field_d, "radicand every endpoint must use");
  };
  auto add_constant = [&](CLI::App* sub) {
    sub->add_option_function<double>(
        "--constant",
        [&](double c) {
          cfg.constant = c;
          cfg.constant_given = true;
        },
        "integral C over every image");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write the report to FILE instead of stdout");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware concurrency)");
  };

  CLI::App* decide = app.add_subcommand("decide", "decide the property for a two-interval set");
  add_set(decide);
  add_constant(decide);
  add_output(decide);

  CLI::App* construct = app.add_subcommand("construct", "build an invariant non-constant function");
  add_set(construct);
  add_constant(construct);
  add_output(construct);
  construct->add_option("--family", cfg.family, "translations or full (default full)")
      ->check(CLI::IsMember({"translations", "full"}));
  construct->add_option("--seed-poly", cfg.seed_poly, "seed coefficients c0,c1,... (exact)");
  construct->add_option("--max-depth", cfg.max_depth, "recurrence levels on each side")
      ->check(CLI::PositiveNumber);
  construct->add_option("--trace", cfg.trace, "sample window x0:x1:n");

  CLI::App* verify = app.add_subcommand("verify", "check that integrals over sampled images agree");
  add_set(verify);
  add_output(verify);
  add_threads(verify);
  verify->add_option("--function", cfg.function_source, "function descriptor as JSON, or @file");
  verify->add_option("--family", cfg.family, "translations or full (default translations)")
      ->check(CLI::IsMember({"translations", "full"}));
  auto* grid = verify->add_option("--grid", cfg.grid, "translation grid t0:t1:n");
  verify->add_option("--random", cfg.random_count, "number of random isometries (default 1000)")
      ->excludes(grid);
  verify->add_option("--seed", cfg.seed, "sampler seed");
  verify->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
  verify->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
  verify->add_option("--tol", cfg.tol, "pass threshold on the relative deviation");
  verify->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* demo = app.add_subcommand("demo", "run the acceptance checks");
  add_output(demo);
  add_threads(demo);
  demo->add_option("--seed", cfg.seed, "sampler seed");
  demo->add_option("--only", cfg.only, "run only these checks")
      ->check(CLI::IsMember(check_names()));

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    result.exit_code = app.exit(e, out, err) == 0 ? kOk : kInputError;
    result.output = out.str();
    result.error = err.str();
    return result;
  }

  try {
    if (*decide) return cmd_decide(cfg);
    if (*construct) return cmd_construct(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_demo(cfg);
  } catch (const NotApplicable& e) {
    result.exit_code = kNotApplicable;
    result.error = std::string("not applicable: ") + e.what() + "\n";
  } catch (const DepthExceeded& e) {
    result.exit_code = kInputError;
    result.error = std::string(e.what()) + " (raise --max-depth)\n";
  } catch (const std::invalid_argument& e) {
    // ParseError, IntervalError, FormatError, IncompatibleSeed, UsageError.
    result.exit_code = kInputError;
    result.error = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kInputError;
    result.error = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace pompeiu::cli
