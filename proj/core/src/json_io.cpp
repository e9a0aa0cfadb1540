#include "pompeiu/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pompeiu::io {

namespace {

Json big_to_json(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    return n.convert_to<std::int64_t>();
  }
  return n.str();
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

void write(std::ostringstream& os, const Json& j, int indent, int level) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, level + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << ',' << nl;
        os << pad;
        write(os, j[i], indent, level + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

Json to_json(const QField& x) { return x.to_string(); }

QField qfield_from_json(const Json& j) {
  if (j.is_string()) return QField::parse(j.get<std::string>());
  if (j.is_number_integer()) return QField(j.get<long long>());
  throw FormatError("exact values must be literal strings such as \"3/2 - 1/1*sqrt(2)\"");
}

Json to_json(const IntervalSet& set) {
  Json intervals = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    intervals.push_back(Json::array({to_json(set.left(i)), to_json(set.right(i))}));
  }
  return {{"field_d", set.radicand()}, {"intervals", intervals}};
}

IntervalSet interval_set_from_json(const Json& j, std::optional<std::int64_t> field_d) {
  const Json* pairs = &j;
  if (j.is_object()) {
    if (j.contains("field_d")) {
      const Json& d = j.at("field_d");
      if (!d.is_number_integer()) throw FormatError("field_d must be an integer");
      if (field_d && *field_d != d.get<std::int64_t>()) {
        throw FormatError("conflicting field_d values");
      }
      field_d = d.get<std::int64_t>();
    }
    pairs = &member(j, "intervals");
  }
  if (!pairs->is_array() || pairs->empty()) {
    throw FormatError("intervals must be a non-empty array of [lo, hi] pairs");
  }
  if (field_d && (*field_d < 1 || !is_square_free(*field_d))) {
    throw FormatError("field_d must be a square-free integer >= 1");
  }
  std::vector<QField> endpoints;
  for (const Json& p : *pairs) {
    if (!p.is_array() || p.size() != 2) throw FormatError("each interval must be a [lo, hi] pair");
    for (const Json& e : p) {
      QField x = qfield_from_json(e);
      if (field_d && x.radicand() != 1 && x.radicand() != *field_d) {
        throw FormatError("literal " + x.to_string() + " is outside Q(sqrt " +
                          std::to_string(*field_d) + ")");
      }
      endpoints.push_back(std::move(x));
    }
  }
  return IntervalSet(std::move(endpoints));
}

Json to_json(const TwoIntervalParams& params) {
  return {{"shorter", to_json(params.shorter)},
          {"gap", to_json(params.gap)},
          {"longer", to_json(params.longer)}};
}

Json to_json(const ConditionReport& report) {
  Json out;
  out["H1"] = report.h1;
  if (report.h2) {
    out["H2"] = {{"n", big_to_json(report.h2->n)}, {"m", big_to_json(report.h2->m)}};
  } else {
    out["H2"] = nullptr;
  }
  out["m_parity"] = report.m_parity ? Json(std::string(to_string(*report.m_parity))) : Json();
  return out;
}

Json to_json(const Verdict& verdict) {
  return {{"holds", verdict.holds},
          {"reason", std::string(to_string(verdict.reason))},
          {"conditions", to_json(verdict.conditions)},
          {"params", to_json(verdict.params)},
          {"counterexample", verdict.counterexample ? to_json(*verdict.counterexample) : Json()}};
}

Json to_json(const Function& f) {
  Json out;
  out["variant"] = std::string(f.kind());
  if (const auto* c = f.get_if<ConstantFunction>()) {
    out["value"] = c->value;
  } else if (const auto* s = f.get_if<SineAffine>()) {
    out["amplitude"] = s->amplitude;
    out["period"] = s->period;
    if (s->exact_period) out["period_exact"] = to_json(*s->exact_period);
    out["phase"] = s->phase;
    out["mean"] = s->mean;
  } else if (const auto* p = f.get_if<PeriodicSamples>()) {
    out["origin"] = p->origin();
    out["period"] = p->period();
    out["samples"] = p->samples();
  } else if (const auto* r = f.get_if<RecurrenceExtension>()) {
    out["set"] = to_json(r->set());
    Json coefficients = Json::array();
    for (const QField& c : r->seed().polynomial.coefficients) coefficients.push_back(to_json(c));
    out["seed"] = {{"coefficients", coefficients},
                   {"target", r->seed().target ? Json(*r->seed().target) : Json()}};
    out["max_depth"] = r->options().max_depth;
    out["integral"] = r->target();
  }
  return out;
}

Function function_from_json(const Json& j) {
  const Json& variant = member(j, "variant");
  if (!variant.is_string()) throw FormatError("variant must be a string");
  const std::string kind = variant.get<std::string>();
  if (kind == "constant") return ConstantFunction{number(j, "value")};
  if (kind == "sine_affine") {
    SineAffine s;
    s.amplitude = number_or(j, "amplitude", 1.0);
    if (j.contains("period_exact")) {
      s.exact_period = qfield_from_json(j.at("period_exact"));
      s.period = s.exact_period->to_double();
    } else {
      s.period = number(j, "period");
    }
    if (!(s.period > 0.0)) throw FormatError("sine period must be positive");
    s.phase = number_or(j, "phase", 0.0);
    s.mean = number_or(j, "mean", 0.0);
    return s;
  }
  if (kind == "periodic_samples") {
    const Json& samples = member(j, "samples");
    if (!samples.is_array()) throw FormatError("samples must be an array of numbers");
    return PeriodicSamples(number_or(j, "origin", 0.0), number(j, "period"),
                           samples.get<std::vector<double>>());
  }
  if (kind == "recurrence_extension") {
    IntervalSet set = interval_set_from_json(member(j, "set"));
    const Json& seed = member(j, "seed");
    const Json& coefficients = member(seed, "coefficients");
    if (!coefficients.is_array()) throw FormatError("seed coefficients must be an array");
    SeedSpec spec;
    for (const Json& c : coefficients) spec.polynomial.coefficients.push_back(qfield_from_json(c));
    if (seed.contains("target") && !seed.at("target").is_null()) spec.target = number(seed, "target");
    RecurrenceOptions options;
    if (j.contains("max_depth")) options.max_depth = member(j, "max_depth").get<int>();
    return RecurrenceExtension(std::move(set), std::move(spec), options);
  }
  throw FormatError("unknown function variant '" + kind + "'");
}

Json to_json(const InvarianceReport& report, bool include_rows) {
  auto sample = [](const InvarianceSample& s) {
    return Json{{"t", s.sigma.shift},
                {"reflected", s.sigma.reflected},
                {"integral", s.integral},
                {"quadrature_error", s.error},
                {"converged", s.converged}};
  };
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(sample(w));
  Json out{{"C_estimate", report.c_estimate},
           {"max_abs_deviation", report.max_abs_deviation},
           {"relative_deviation", report.relative_deviation},
           {"sup_abs_f", report.sup_abs_f},
           {"measure", report.measure},
           {"samples", report.samples},
           {"sigma_family", std::string(to_string(report.family))},
           {"quadrature_converged", report.quadrature_converged},
           {"max_quadrature_error", report.max_quadrature_error},
           {"witnesses", witnesses}};
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& r : report.rows) rows.push_back(sample(r));
    out["rows"] = rows;
  }
  return out;
}

std::string to_csv(const InvarianceReport& report) {
  std::ostringstream os;
  os << "t,reflected,integral\n";
  for (const auto& r : report.rows) {
    os << format_double(r.sigma.shift) << ',' << (r.sigma.reflected ? 1 : 0) << ','
       << format_double(r.integral) << '\n';
  }
  return os.str();
}

}  // namespace pompeiu::io
