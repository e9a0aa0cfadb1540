#include "cli/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pompeiu/decision.hpp"
#include "pompeiu/exact_field.hpp"
#include "pompeiu/functions.hpp"
#include "pompeiu/interval_set.hpp"
#include "pompeiu/verifier.hpp"

namespace pompeiu::cli {

namespace {

using io::Json;

QField q(const char* literal) { return QField::parse(literal); }

TwoIntervalParams two(const char* shorter, const char* gap, const char* longer) {
  return TwoIntervalParams::make(q(shorter), q(gap), q(longer));
}

class Recorder {
 public:
  explicit Recorder(CheckResult& r) : r_(r) {}
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      r_.passed = false;
      r_.failures.push_back(what);
    }
  }

 private:
  CheckResult& r_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1p-53;
}

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double range_over(const Function& f, double x0, double x1, int n) {
  double lo = f(x0);
  double hi = lo;
  for (int i = 1; i < n; ++i) {
    double y = f(x0 + (x1 - x0) * i / (n - 1));
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return hi - lo;
}

struct FailingCase {
  const char* label;
  TwoIntervalParams params;
};

std::vector<FailingCase> failing_cases() {
  return {{"l=1,H=1,L=2", two("1", "1", "2")},
          {"l=sqrt2,H=3/2-sqrt2,L=1+sqrt2", two("sqrt(2)", "3/2 - sqrt(2)", "1 + sqrt(2)")}};
}

std::vector<FailingCase> holding_cases() {
  return {{"l=1,H=sqrt2,L=sqrt2", two("1", "sqrt(2)", "sqrt(2)")},
          {"l=sqrt2,H=2-sqrt2,L=1+sqrt2", two("sqrt(2)", "2 - sqrt(2)", "1 + sqrt(2)")}};
}

constexpr double kNecessityConstant = 6.0;

// Exact verdicts for the four canonical two-interval shapes.
void decision_table(CheckResult& r, const CheckOptions&) {
  Recorder rec(r);
  struct Row {
    FailingCase c;
    bool holds;
    VerdictReason reason;
    long m;  // 0 when H2 must be absent
  };
  const std::vector<Row> rows = {
      {{"l=1,H=sqrt2,L=sqrt2", two("1", "sqrt(2)", "sqrt(2)")}, true, VerdictReason::holds_not_h2, 0},
      {{"l=1,H=1,L=2", two("1", "1", "2")}, false, VerdictReason::h1_fails, 6},
      {{"l=sqrt2,H=3/2-sqrt2,L=1+sqrt2", two("sqrt(2)", "3/2 - sqrt(2)", "1 + sqrt(2)")},
       false, VerdictReason::h2_odd, 5},
      {{"l=sqrt2,H=2-sqrt2,L=1+sqrt2", two("sqrt(2)", "2 - sqrt(2)", "1 + sqrt(2)")},
       true, VerdictReason::holds_h2_even, 6},
  };
  Json table = Json::array();
  for (const Row& row : rows) {
    Verdict v = decide_two_interval(row.c.params, 0.0);
    rec.expect(v.holds == row.holds, std::string(row.c.label) + ": wrong verdict");
    rec.expect(v.reason == row.reason, std::string(row.c.label) + ": wrong reason " +
                                           std::string(to_string(v.reason)));
    rec.expect(v.holds != v.counterexample.has_value(),
               std::string(row.c.label) + ": counterexample presence mismatch");
    if (row.m == 0) {
      rec.expect(!v.conditions.h2, std::string(row.c.label) + ": H2 should be absent");
    } else {
      rec.expect(v.conditions.h2 && v.conditions.h2->m == row.m,
                 std::string(row.c.label) + ": wrong m");
    }
    table.push_back({{"case", row.c.label}, {"verdict", io::to_json(v)}});
  }
  r.details["cases"] = table;
}

void recurrence(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  IntervalSet set({q("0"), q("1"), q("2"), q("3")});
  Function f = construct_recurrence_extension(set, default_seed(set));
  double worst_residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double t = -10.0 + 20.0 * i / 999.0;
    worst_residual = std::max(worst_residual, std::abs(pointwise_residual(f, set, t)));
  }
  rec.expect(worst_residual <= 1e-9, "pointwise residual above 1e-9");
  InvarianceReport report = verify_invariance(f, set, IsometryFamily::translations,
                                              GridSampler{-10.0, 10.0, 401}, {}, options.threads);
  rec.expect(report.relative_deviation <= 1e-8, "relative deviation above 1e-8");
  rec.expect(report.quadrature_converged, "quadrature did not converge");
  double range = range_over(f, -10.0, 13.0, 2301);
  rec.expect(range > 0.1, "extension is numerically constant on [-10, 13]");
  r.details = {{"max_pointwise_residual", worst_residual},
               {"relative_deviation", report.relative_deviation},
               {"max_abs_deviation", report.max_abs_deviation},
               {"C_estimate", report.c_estimate},
               {"range_on_window", range},
               {"descriptor", io::to_json(f)}};
}

void necessity(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  Json cases = Json::array();
  for (const FailingCase& c : failing_cases()) {
    Verdict v = decide_two_interval(c.params, kNecessityConstant);
    if (!v.counterexample) {
      rec.expect(false, std::string(c.label) + ": no counterexample");
      continue;
    }
    const Function& f = *v.counterexample;
    InvarianceReport report =
        verify_invariance(f, c.params.to_set(), IsometryFamily::full,
                          RandomSampler{options.seed, 1000, -10.0, 10.0}, {}, options.threads);
    rec.expect(report.max_abs_deviation <= 1e-9, std::string(c.label) + ": deviation above 1e-9");
    rec.expect(std::abs(report.c_estimate - kNecessityConstant) <= 1e-9,
               std::string(c.label) + ": integral differs from C");
    double period = f.get_if<SineAffine>()->period;
    double range = range_over(f, 0.0, period, 1001);
    rec.expect(range >= 1.9, std::string(c.label) + ": range below 1.9 on one period");
    cases.push_back({{"case", c.label},
                     {"reason", std::string(to_string(v.reason))},
                     {"counterexample", io::to_json(f)},
                     {"max_abs_deviation", report.max_abs_deviation},
                     {"C_estimate", report.c_estimate},
                     {"range_on_period", range}});
  }
  r.details["cases"] = cases;
}

// Sines with natural periods must not pass on sets that have the property.
void sufficiency(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  std::mt19937_64 rng(options.seed);
  Json cases = Json::array();
  for (const FailingCase& c : holding_cases()) {
    const TwoIntervalParams& p = c.params;
    const std::vector<std::pair<const char*, QField>> periods = {
        {"l", p.shorter},
        {"L", p.longer},
        {"L-l", p.longer - p.shorter},
        {"L+l", p.longer + p.shorter},
        {"L+H", p.longer + p.gap}};
    double weakest = std::numeric_limits<double>::infinity();
    int candidates = 0;
    for (const auto& [label, period] : periods) {
      for (int k = 0; k < 4; ++k) {
        SineAffine s;
        s.period = period.to_double();
        s.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        InvarianceReport report = verify_invariance(
            s, p.to_set(), IsometryFamily::full, RandomSampler{rng(), 200, -10.0, 10.0}, {},
            options.threads);
        weakest = std::min(weakest, report.max_abs_deviation);
        rec.expect(report.max_abs_deviation >= 1e-3,
                   std::string(c.label) + ": candidate with period " + label +
                       " looks invariant");
        ++candidates;
      }
    }
    cases.push_back({{"case", c.label}, {"candidates", candidates}, {"min_deviation", weakest}});
  }
  r.details["cases"] = cases;
}

QField random_rational(std::mt19937_64& rng) {
  return QField(Rational(pick(rng, 1, 60), pick(rng, 1, 24)));
}

QField random_quadratic(std::mt19937_64& rng) {
  for (;;) {
    QField x(Rational(pick(rng, -40, 40), pick(rng, 1, 12)),
             Rational(pick(rng, -30, 30), pick(rng, 1, 12)), 2);
    if (sign(x) > 0) return x;
  }
}

void hole_identities(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  std::mt19937_64 rng(options.seed);
  int rational_ok = 0;
  int quadratic_ok = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = TwoIntervalParams::make(random_rational(rng), random_rational(rng),
                                     random_rational(rng));
    if (hole_equiv_check(p)) ++rational_ok;
    auto s = TwoIntervalParams::make(random_quadratic(rng), random_quadratic(rng),
                                     random_quadratic(rng));
    if (hole_equiv_check(s)) ++quadratic_ok;
  }
  rec.expect(rational_ok == 200, "hole identity failed on a rational triple");
  rec.expect(quadratic_ok == 200, "hole identity failed on a Q(sqrt 2) triple");

  double worst_chain = 0.0;
  for (const FailingCase& c : failing_cases()) {
    Verdict v = decide_two_interval(c.params, kNecessityConstant);
    const Function& f = *v.counterexample;
    const double l = c.params.shorter.to_double();
    const double middle = (QField(2) * c.params.gap + c.params.longer).to_double();
    const std::vector<WindowBlock> chain = {{l, +1}, {middle, 0}, {l, -1}};
    for (int i = 0; i < 100; ++i) {
      double x = uniform(rng, -10.0, 10.0);
      worst_chain = std::max(worst_chain, std::abs(signed_window_integral(f, chain, x)));
    }
  }
  rec.expect(worst_chain <= 1e-8, "window chain [l+, 2H+L, l-; x] not zero within 1e-8");
  r.details = {{"rational_triples_ok", rational_ok},
               {"quadratic_triples_ok", quadratic_ok},
               {"max_chain_value", worst_chain}};
}

void three_interval(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  struct Case {
    const char* label;
    ThreeIntervalParams params;
  };
  const std::vector<Case> cases = {
      {"(1,1,1,H=1)", ThreeIntervalParams::make(q("1"), q("1"), q("1"), q("1"))},
      {"(1,sqrt2,2-sqrt2,H=3)",
       ThreeIntervalParams::make(q("1"), q("3"), q("sqrt(2)"), q("2 - sqrt(2)"))}};
  Json out = Json::array();
  for (const Case& c : cases) {
    for (double constant : {0.0, 3.0}) {
      Function f = construct_three_interval_counterexample(c.params, constant);
      InvarianceReport report =
          verify_invariance(f, c.params.to_set(), IsometryFamily::full,
                            RandomSampler{options.seed, 1000, -10.0, 10.0}, {}, options.threads);
      rec.expect(report.max_abs_deviation <= 1e-9,
                 std::string(c.label) + ": deviation above 1e-9");
      rec.expect(std::abs(report.c_estimate - constant) <= 1e-9,
                 std::string(c.label) + ": integral differs from C");
      out.push_back({{"case", c.label},
                     {"C", constant},
                     {"counterexample", io::to_json(f)},
                     {"max_abs_deviation", report.max_abs_deviation},
                     {"C_estimate", report.c_estimate}});
    }
  }
  bool refused = false;
  try {
    construct_three_interval_counterexample(
        ThreeIntervalParams::make(q("1"), q("1"), q("1"), q("sqrt(2)")), 3.0);
  } catch (const NotApplicable&) {
    refused = true;
  }
  rec.expect(refused, "construction accepted an irrational (l1+l2+l3)/H");
  r.details = {{"cases", out}, {"irrational_refused", refused}};
}

// I = [0,l] U [2l,3l] U [4l,4l+L] with l/L irrational has the property.
void window_chain(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  std::mt19937_64 rng(options.seed);
  const QField l = q("1");
  const QField big = q("sqrt(2)");
  IntervalSet set({QField(0), l, QField(2) * l, QField(3) * l, QField(4) * l, QField(4) * l + big});
  const double ld = l.to_double();
  const double bd = big.to_double();

  const std::vector<std::pair<const char*, double>> periods = {
      {"l", ld},         {"L", bd},          {"l/2", ld / 2},        {"L/2", bd / 2},
      {"4l+2L", 4 * ld + 2 * bd}, {"5l+L", 5 * ld + bd}, {"L-l", bd - ld}, {"L+l", bd + ld}};
  double weakest = std::numeric_limits<double>::infinity();
  Json candidates = Json::array();
  for (const auto& [label, period] : periods) {
    SineAffine s;
    s.period = period;
    s.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    InvarianceReport report = verify_invariance(s, set, IsometryFamily::full,
                                                RandomSampler{rng(), 200, -10.0, 10.0}, {},
                                                options.threads);
    weakest = std::min(weakest, report.max_abs_deviation);
    candidates.push_back({{"period", label}, {"max_abs_deviation", report.max_abs_deviation}});
    rec.expect(report.max_abs_deviation >= 1e-3,
               std::string("naive sine with period ") + label + " looks invariant");
  }

  const double c = 1.5;
  Function constant = ConstantFunction{c};
  const double cset = c * (2 * ld + bd);
  PeriodCheck whole = detect_period(constant, 4 * ld + 2 * bd, -10.0, 10.0, 201, 1e-12);
  auto window = [&](double x) { return integrate(constant, x, x + bd).value; };
  PeriodCheck windowed = detect_period(window, 5 * ld + bd, -10.0, 10.0, 201, 1e-12);
  rec.expect(whole.periodic, "constant fails the (4l+2L) period check");
  rec.expect(windowed.periodic, "window integral of a constant fails the (5l+L) period check");

  const std::vector<WindowBlock> forward = {{ld, +1}, {ld, 0}, {ld, +1}, {ld, 0}, {bd, +1}};
  const std::vector<WindowBlock> mirrored = {{bd, +1}, {ld, 0}, {ld, +1}, {ld, 0}, {ld, +1}};
  const std::vector<WindowBlock> negated = {{ld, -1}, {ld, 0}, {ld, -1}, {ld, 0}, {bd, -1}};
  const std::vector<WindowBlock> difference = {{bd, +1}, {5 * ld, 0}, {bd, -1}};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double x = uniform(rng, -10.0, 10.0);
    worst = std::max(worst, std::abs(signed_window_integral(constant, forward, x + bd) - cset));
    worst = std::max(worst, std::abs(signed_window_integral(constant, mirrored, x) - cset));
    worst = std::max(worst,
                     std::abs(signed_window_integral(constant, negated, x + ld + bd) + cset));
    worst = std::max(worst, std::abs(signed_window_integral(constant, difference, x)));
    worst = std::max(worst, std::abs(integrate(constant, x, x + 4 * ld + 2 * bd).value - 2 * cset));
  }
  rec.expect(worst <= 1e-12, "window identities fail for a constant");
  r.details = {{"naive_candidates", candidates},
               {"min_naive_deviation", weakest},
               {"period_4l_2L_deviation", whole.max_deviation},
               {"period_5l_L_window_deviation", windowed.max_deviation},
               {"max_window_identity_error", worst}};
}

void oracle(CheckResult& r, const CheckOptions& options) {
  Recorder rec(r);
  std::mt19937_64 rng(options.seed);
  double worst_sine = 0.0;
  double worst_poly = 0.0;
  for (int i = 0; i < 100; ++i) {
    double u = uniform(rng, -10.0, 10.0);
    double v = u + uniform(rng, 1e-3, 20.0);

    double omega = uniform(rng, 0.25, 6.0);
    double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    Integrand sine = [=](double x) { return std::sin(omega * x + phi); };
    long double exact_sine =
        (std::cos(static_cast<long double>(omega) * u + phi) -
         std::cos(static_cast<long double>(omega) * v + phi)) / omega;
    double got = integrate(sine, u, v).value;
    double err = std::abs(got - static_cast<double>(exact_sine)) /
                 std::max(1.0L, std::abs(exact_sine));
    worst_sine = std::max(worst_sine, err);

    const int degree = static_cast<int>(pick(rng, 0, 5));
    std::vector<double> c(degree + 1);
    for (double& ck : c) ck = uniform(rng, -1.0, 1.0);
    Integrand poly = [&c](double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
    // Exact integral and its condition scale sum_k |c_k| int |x|^k.
    long double exact = 0.0L;
    long double scale = 0.0L;
    for (int k = 0; k <= degree; ++k) {
      long double up = std::pow(static_cast<long double>(u), k + 1);
      long double vp = std::pow(static_cast<long double>(v), k + 1);
      exact += c[k] * (vp - up) / (k + 1);
      long double au = std::abs(up) / (k + 1);
      long double av = std::abs(vp) / (k + 1);
      long double abs_int = (u >= 0 || v <= 0) ? std::abs(av - au) : au + av;
      scale += std::abs(c[k]) * abs_int;
    }
    double pgot = integrate(poly, u, v).value;
    double perr = std::abs(pgot - static_cast<double>(exact)) / std::max(1.0L, scale);
    worst_poly = std::max(worst_poly, perr);
  }
  rec.expect(worst_sine <= 1e-12, "sine integrals off by more than 1e-12");
  rec.expect(worst_poly <= 1e-12, "polynomial integrals off by more than 1e-12");
  r.details = {{"max_sine_error", worst_sine}, {"max_polynomial_error", worst_poly}};
}

struct Entry {
  const char* name;
  const char* title;
  double time_limit;  // seconds, 0 = none
  void (*run)(CheckResult&, const CheckOptions&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"decision-table", "two-interval decision table", 1.0, decision_table},
      {"recurrence", "translation-invariant recurrence extension", 30.0, recurrence},
      {"necessity", "counterexamples for failing sets", 60.0, necessity},
      {"sufficiency", "negative control on holding sets", 60.0, sufficiency},
      {"lemma-hole", "hole transform identities", 0.0, hole_identities},
      {"three-interval", "three-interval counterexamples", 0.0, three_interval},
      {"window-chain", "three-interval set with the property", 0.0, window_chain},
      {"oracle", "quadrature oracle calibration", 0.0, oracle},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

CheckResult run_check(std::string_view name, const CheckOptions& options) {
  for (const Entry& e : registry()) {
    if (name != e.name) continue;
    CheckResult result;
    result.name = e.name;
    result.title = e.title;
    auto start = std::chrono::steady_clock::now();
    try {
      e.run(result, options);
    } catch (const std::exception& ex) {
      result.passed = false;
      result.failures.push_back(std::string("exception: ") + ex.what());
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.time_limit > 0.0 && result.seconds >= e.time_limit) {
      result.passed = false;
      result.failures.push_back("runtime limit exceeded");
    }
    return result;
  }
  throw std::invalid_argument("unknown check '" + std::string(name) + "'");
}

std::vector<CheckResult> run_checks(std::span<const std::string> only, const CheckOptions& options) {
  for (const std::string& name : only) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      throw std::invalid_argument("unknown check '" + name + "'");
    }
  }
  std::vector<CheckResult> out;
  for (const std::string& name : check_names()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    out.push_back(run_check(name, options));
  }
  return out;
}

io::Json to_json(const CheckResult& result) {
  return {{"name", result.name},
          {"title", result.title},
          {"passed", result.passed},
          {"failures", result.failures},
          {"details", result.details}};
}

}  // namespace pompeiu::cli
