#include "pompeiu/functions.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "pompeiu/decision.hpp"

namespace pompeiu {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kExactKeyLimit = std::int64_t{1} << 40;
constexpr double kQuantum = 0x1p-40;
constexpr std::size_t kMaxKinkPoints = 200'000;

// Fractional part of x / period, in [0, 1).
double phase_of(double x, double period) {
  double u = x / period;
  return u - std::floor(u);
}

// Solves the cyclic system M[i-1] + 4 M[i] + M[i+1] = rhs[i] (indices mod n).
std::vector<double> solve_cyclic(std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  auto tridiagonal = [n](const std::vector<double>& diag, std::vector<double> r) {
    std::vector<double> c(n, 0.0);
    double beta = diag[0];
    r[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
      c[i] = 1.0 / beta;
      beta = diag[i] - c[i];
      r[i] = (r[i] - r[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) r[i] -= c[i + 1] * r[i + 1];
    return r;
  };
  const double gamma = -4.0;
  std::vector<double> diag(n, 4.0);
  diag[0] = 4.0 - gamma;
  diag[n - 1] = 4.0 - 1.0 / gamma;
  std::vector<double> x = tridiagonal(diag, std::move(rhs));
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = 1.0;
  std::vector<double> z = tridiagonal(diag, std::move(u));
  double fact = (x[0] + x[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace

double SineAffine::operator()(double x) const {
  return amplitude * std::sin(kTwoPi * phase_of(x, period) + phase) + mean;
}

double SineAffine::integral(double u, double v) const {
  double cu = std::cos(kTwoPi * phase_of(u, period) + phase);
  double cv = std::cos(kTwoPi * phase_of(v, period) + phase);
  return mean * (v - u) + amplitude * period / kTwoPi * (cu - cv);
}

PeriodicSamples::PeriodicSamples(double origin, double period, std::vector<double> samples)
    : origin_(origin), period_(period) {
  if (!(period > 0.0)) throw std::invalid_argument("periodic samples need a positive period");
  if (samples.size() < 4) {
    throw std::invalid_argument("periodic samples need at least 4 values (3 intervals)");
  }
  if (samples.front() != samples.back()) {
    throw std::invalid_argument("periodic samples must close up: first and last values differ");
  }
  samples.pop_back();
  values_ = std::move(samples);
  const std::size_t n = values_.size();
  step_ = period_ / static_cast<double>(n);
  std::vector<double> rhs(n);
  const double scale = 6.0 / (step_ * step_);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = scale * (values_[(i + 1) % n] - 2.0 * values_[i] + values_[(i + n - 1) % n]);
  }
  curvature_ = solve_cyclic(std::move(rhs));
}

double PeriodicSamples::operator()(double x) const {
  const std::size_t n = values_.size();
  double u = phase_of(x - origin_, period_) * static_cast<double>(n);
  auto i = std::min(static_cast<std::size_t>(u), n - 1);
  double t = u - static_cast<double>(i);
  std::size_t j = (i + 1) % n;
  double s = 1.0 - t;
  return s * values_[i] + t * values_[j] +
         step_ * step_ / 6.0 * ((s * s * s - s) * curvature_[i] + (t * t * t - t) * curvature_[j]);
}

double PeriodicSamples::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

std::vector<double> PeriodicSamples::knots(double u, double v) const {
  std::vector<double> out;
  double k = std::floor((u - origin_) / step_) + 1.0;
  for (double x = origin_ + k * step_; x < v; x = origin_ + (++k) * step_) {
    if (x > u) out.push_back(x);
  }
  return out;
}

std::vector<double> PeriodicSamples::samples() const {
  std::vector<double> out = values_;
  out.push_back(values_.front());
  return out;
}

QField Polynomial::operator()(const QField& x) const {
  QField acc;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + it->to_double();
  }
  return acc;
}

QField Polynomial::integral(const QField& u, const QField& v) const {
  QField acc;
  QField up = u;
  QField vp = v;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    acc += coefficients[k] * (vp - up) / QField(static_cast<long long>(k + 1));
    up *= u;
    vp *= v;
  }
  return acc;
}

RecurrenceExtension::RecurrenceExtension(IntervalSet set, SeedSpec seed, RecurrenceOptions options)
    : set_(std::move(set)), seed_(std::move(seed)), options_(options) {
  if (options_.max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  const Polynomial& p = seed_.polynomial;
  const std::size_t n = set_.size();

  QField residual;
  for (std::size_t i = 0; i < n; ++i) residual += p(set_.left(i)) - p(set_.right(i));
  if (!residual.is_zero()) {
    throw IncompatibleSeed("seed violates sum f0(a_i) = sum f0(b_i); residual " +
                               residual.to_string(),
                           residual);
  }

  QField exact_integral;
  for (std::size_t i = 0; i < n; ++i) exact_integral += p.integral(set_.left(i), set_.right(i));
  double base = exact_integral.to_double();
  if (seed_.target) {
    shift_ = (*seed_.target - base) / set_.measure().to_double();
    target_ = *seed_.target;
  } else {
    target_ = base;
  }
  for (const QField& c : p.coefficients) seed_coefficients_.push_back(c.to_double());

  lo_ = set_.first().to_double();
  hi_ = set_.last().to_double();
  first_length_ = set_.length(0).to_double();
  last_length_ = set_.length(n - 1).to_double();

  // Step offsets, exact.
  std::vector<std::pair<QField, double>> left;
  std::vector<std::pair<QField, double>> right;
  for (std::size_t i = 0; i < n; ++i) {
    left.emplace_back(set_.right(i) - set_.first(), 1.0);
    if (i > 0) left.emplace_back(set_.left(i) - set_.first(), -1.0);
    right.emplace_back(set_.left(i) - set_.last(), 1.0);
    if (i + 1 < n) right.emplace_back(set_.right(i) - set_.last(), -1.0);
  }

  BigInt rational_den{1};
  BigInt radical_den{1};
  for (const auto* side : {&left, &right}) {
    for (const auto& [off, w] : *side) {
      rational_den = boost::multiprecision::lcm(
          rational_den, boost::multiprecision::denominator(off.rational_part()));
      radical_den = boost::multiprecision::lcm(
          radical_den, boost::multiprecision::denominator(off.radical_coefficient()));
    }
  }
  auto coordinate = [](const Rational& r, const BigInt& den) {
    return BigInt(boost::multiprecision::numerator(r) * (den / boost::multiprecision::denominator(r)));
  };
  for (const auto* side : {&left, &right}) {
    for (const auto& [off, w] : *side) {
      if (boost::multiprecision::abs(coordinate(off.rational_part(), rational_den)) >= kExactKeyLimit ||
          boost::multiprecision::abs(coordinate(off.radical_coefficient(), radical_den)) >= kExactKeyLimit) {
        exact_keys_ = false;
      }
    }
  }
  if (exact_keys_ && rational_den < kExactKeyLimit) {
    rational_denominator_ = rational_den.convert_to<double>();
    if (set_.radicand() != 1) {
      radical_scale_ = QField(0, Rational(1, radical_den), set_.radicand()).to_double();
    }
  } else {
    exact_keys_ = false;
    rational_denominator_ = 1.0 / kQuantum;
    radical_scale_ = 0.0;
  }

  auto encode_side = [&](const std::vector<std::pair<QField, double>>& side) {
    std::vector<Step> steps;
    for (const auto& [off, w] : side) {
      Key k;
      if (exact_keys_) {
        k.p = coordinate(off.rational_part(), rational_den).convert_to<std::int64_t>();
        k.q = coordinate(off.radical_coefficient(), radical_den).convert_to<std::int64_t>();
      } else {
        k.p = std::llround(off.to_double() / kQuantum);
      }
      steps.push_back({k, w});
    }
    return steps;
  };
  left_steps_ = encode_side(left);
  right_steps_ = encode_side(right);
}

double RecurrenceExtension::offset(const Key& k) const {
  return static_cast<double>(k.p) / rational_denominator_ +
         static_cast<double>(k.q) * radical_scale_;
}

double RecurrenceExtension::seed_value(double x) const {
  double acc = 0.0;
  for (auto it = seed_coefficients_.rbegin(); it != seed_coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc + shift_;
}

int RecurrenceExtension::level(double x) const {
  if (x < lo_) return static_cast<int>(std::ceil((lo_ - x) / first_length_));
  if (x > hi_) return static_cast<int>(std::ceil((x - hi_) / last_length_));
  return 0;
}

RecurrenceExtension::Trace RecurrenceExtension::trace(double x) const {
  Trace out;
  out.level = level(x);
  if (out.level > options_.max_depth) {
    throw DepthExceeded("x = " + std::to_string(x) + " needs " + std::to_string(out.level) +
                        " extension levels, cap is " + std::to_string(options_.max_depth));
  }
  if (out.level == 0) {
    out.value = seed_value(x);
    out.magnitude = std::abs(out.value);
    out.lattice_points = 1;
    return out;
  }

  struct Walker {
    const RecurrenceExtension& self;
    double x;
    std::unordered_map<Key, double, KeyHash> memo;
    double magnitude = 0.0;

    double eval(const Key& k) {
      double pos = x + self.offset(k);
      double v;
      if (pos >= self.lo_ && pos <= self.hi_) {
        v = self.seed_value(pos);
      } else {
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        const auto& steps = pos < self.lo_ ? self.left_steps_ : self.right_steps_;
        v = 0.0;
        for (const Step& s : steps) v += s.weight * eval(Key{k.p + s.key.p, k.q + s.key.q});
        memo.emplace(k, v);
      }
      magnitude = std::max(magnitude, std::abs(v));
      return v;
    }
  };
  Walker walker{*this, x, {}};
  walker.memo.reserve(64);
  out.value = walker.eval(Key{});
  out.magnitude = walker.magnitude;
  out.lattice_points = walker.memo.size();
  return out;
}

std::vector<double> RecurrenceExtension::enumerate(const std::vector<Step>& steps, double origin,
                                                   double reach) const {
  std::vector<double> out{origin};
  std::unordered_set<Key, KeyHash> seen{Key{}};
  std::vector<Key> frontier{Key{}};
  while (!frontier.empty() && seen.size() < kMaxKinkPoints) {
    std::vector<Key> next;
    for (const Key& k : frontier) {
      for (const Step& s : steps) {
        Key n{k.p + s.key.p, k.q + s.key.q};
        double off = offset(n);
        if (std::abs(off) > reach || !seen.insert(n).second) continue;
        out.push_back(origin - off);
        next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<double> RecurrenceExtension::kinks(double u, double v) const {
  std::vector<double> all;
  if (u < lo_) {
    auto l = enumerate(left_steps_, lo_, lo_ - u);
    all.insert(all.end(), l.begin(), l.end());
  }
  if (v > hi_) {
    auto r = enumerate(right_steps_, hi_, v - hi_);
    all.insert(all.end(), r.begin(), r.end());
  }
  std::vector<double> out;
  for (double x : all) {
    if (x > u && x < v) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> Function::breakpoints(double u, double v) const {
  if (const auto* s = std::get_if<PeriodicSamples>(&v_)) return s->knots(u, v);
  if (const auto* r = std::get_if<RecurrenceExtension>(&v_)) return r->kinks(u, v);
  return {};
}

std::string_view Function::kind() const {
  struct Namer {
    std::string_view operator()(const ConstantFunction&) const { return "constant"; }
    std::string_view operator()(const SineAffine&) const { return "sine_affine"; }
    std::string_view operator()(const PeriodicSamples&) const { return "periodic_samples"; }
    std::string_view operator()(const RecurrenceExtension&) const { return "recurrence_extension"; }
  };
  return std::visit(Namer{}, v_);
}

SeedSpec default_seed(const IntervalSet& set, std::optional<double> target) {
  QField squares;
  QField lengths;
  for (std::size_t i = 0; i < set.size(); ++i) {
    squares += set.right(i) * set.right(i) - set.left(i) * set.left(i);
    lengths += set.length(i);
  }
  return SeedSpec{Polynomial{{QField(0), -(squares / lengths), QField(1)}}, target};
}

RecurrenceExtension construct_recurrence_extension(const IntervalSet& set, SeedSpec seed,
                                                   RecurrenceOptions options) {
  if (set.size() != 2) {
    throw IntervalError("two-interval recurrence needs exactly two intervals, got " +
                        std::to_string(set.size()));
  }
  return RecurrenceExtension(set, std::move(seed), options);
}

RecurrenceExtension construct_recurrence_extension_n(const IntervalSet& set, SeedSpec seed,
                                                     RecurrenceOptions options) {
  return RecurrenceExtension(set, std::move(seed), options);
}

Function construct_sine_counterexample(const TwoIntervalParams& params, double constant) {
  ConditionReport c = classify_conditions(params);
  if (!c.h2 || c.m_parity != Parity::odd) {
    throw NotApplicable("sine counterexample needs (L - l)/(2(L + H)) = n/m with m odd");
  }
  QField period = skew_period(params)->period;
  SineAffine f;
  f.period = period.to_double();
  f.mean = constant / (params.longer + params.shorter).to_double();
  f.exact_period = std::move(period);
  return f;
}

namespace {

std::pair<QField, double> length_period_and_mean(const TwoIntervalParams& params,
                                                 double constant) {
  std::optional<CommonPeriod> lp = length_period(params);
  if (!lp) throw NotApplicable("periodic counterexample needs commensurable lengths");
  QField span = QField(Rational(lp->n1 + lp->n2)) * lp->period;
  return {lp->period, constant / span.to_double()};
}

}  // namespace

Function construct_periodic_counterexample(const TwoIntervalParams& params, double constant) {
  auto [period, mean] = length_period_and_mean(params, constant);
  SineAffine f;
  f.period = period.to_double();
  f.mean = mean;
  f.exact_period = std::move(period);
  return f;
}

Function construct_periodic_counterexample(const TwoIntervalParams& params, double constant,
                                           std::span<const double> shape) {
  auto [period, mean] = length_period_and_mean(params, constant);
  PeriodicSamples raw(0.0, period.to_double(), {shape.begin(), shape.end()});
  std::vector<double> shifted = raw.samples();
  const double delta = mean - raw.mean();
  for (double& y : shifted) y += delta;
  return PeriodicSamples(0.0, period.to_double(), std::move(shifted));
}

Function construct_three_interval_counterexample(const ThreeIntervalParams& params,
                                                 double constant) {
  std::optional<CommonPeriod> split = three_interval_rational_test(params);
  if (!split) {
    throw NotApplicable("three-interval counterexample needs (l1 + l2 + l3) / gap rational");
  }
  SineAffine f;
  f.period = split->period.to_double();
  f.mean = constant / (QField(Rational(split->n1)) * split->period).to_double();
  f.exact_period = split->period;
  return f;
}

}  // namespace pompeiu
