#ifndef POMPEIU_FUNCTIONS_HPP
#define POMPEIU_FUNCTIONS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "pompeiu/exact_field.hpp"
#include "pompeiu/interval_set.hpp"

namespace pompeiu {

/// A construction was requested for parameters that do not admit it.
class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The seed polynomial violates sum f0(a_i) == sum f0(b_i).
class IncompatibleSeed : public std::invalid_argument {
 public:
  IncompatibleSeed(const std::string& what, QField residual)
      : std::invalid_argument(what), residual_(std::move(residual)) {}
  const QField& residual() const { return residual_; }

 private:
  QField residual_;
};

/// Evaluation point lies beyond the configured number of extension levels.
class DepthExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConstantFunction {
  double value = 0.0;

  double operator()(double) const { return value; }
};

/// amplitude * sin(2 pi x / period + phase) + mean
struct SineAffine {
  double amplitude = 1.0;
  double period = 1.0;
  double phase = 0.0;
  double mean = 0.0;
  std::optional<QField> exact_period;

  double operator()(double x) const;
  /// Closed-form integral over [u, v].
  double integral(double u, double v) const;
};

/// Periodic cubic spline through equally spaced samples of one period.
class PeriodicSamples {
 public:
  /// `samples` are taken at origin + k * period / n for k = 0..n and must
  /// close up (samples.front() == samples.back()); n >= 3.
  PeriodicSamples(double origin, double period, std::vector<double> samples);

  double operator()(double x) const;
  double mean() const;
  std::vector<double> knots(double u, double v) const;

  double origin() const { return origin_; }
  double period() const { return period_; }
  /// The samples as given, closing value included.
  std::vector<double> samples() const;

 private:
  double origin_;
  double period_;
  double step_;
  std::vector<double> values_;
  std::vector<double> curvature_;
};

/// Polynomial with exact coefficients, lowest degree first.
struct Polynomial {
  std::vector<QField> coefficients;

  QField operator()(const QField& x) const;
  double operator()(double x) const;
  QField integral(const QField& u, const QField& v) const;
};

/// Seed for the recurrence extension: f0 = polynomial + shift on [a_1, b_N],
/// where the floating shift makes the integral over the set equal `target`.
/// Without a target the shift is zero.
struct SeedSpec {
  Polynomial polynomial;
  std::optional<double> target;
};

struct RecurrenceOptions {
  /// Number of extension levels on each side (level k on the left covers
  /// [a_1 - k (b_1 - a_1), a_1 - (k - 1)(b_1 - a_1)), likewise on the right).
  int max_depth = 64;
};

/// Continuous extension of a seed on [a_1, b_N] to the whole line such that
/// sum_i f(a_i + t) == sum_i f(b_i + t) for every t. That makes the integral
/// over every translate of the set constant.
///
/// Left of a_1:  f(x) = sum_i f(x + b_i - a_1) - sum_{i>1} f(x + a_i - a_1).
/// Right of b_N: f(x) = sum_i f(x - (b_N - a_i)) - sum_{i<N} f(x - (b_N - b_i)).
///
/// All recursive arguments stay on x + lattice spanned by the step offsets;
/// each evaluation memoizes on exact lattice coordinates, so the 3^depth
/// call tree collapses to the distinct lattice points.
class RecurrenceExtension {
 public:
  RecurrenceExtension(IntervalSet set, SeedSpec seed, RecurrenceOptions options = {});

  struct Trace {
    double value = 0.0;
    int level = 0;
    double magnitude = 0.0;  ///< max |f| over every lattice point visited
    std::size_t lattice_points = 0;
  };

  double operator()(double x) const { return trace(x).value; }
  Trace trace(double x) const;
  /// Points in (u, v) where f may fail to be differentiable.
  std::vector<double> kinks(double u, double v) const;
  /// Extension level of x (0 inside the seed interval).
  int level(double x) const;

  const IntervalSet& set() const { return set_; }
  const SeedSpec& seed() const { return seed_; }
  const RecurrenceOptions& options() const { return options_; }
  double shift() const { return shift_; }
  /// Integral of the seed over the set (the invariant translation integral).
  double target() const { return target_; }

 private:
  struct Key {
    std::int64_t p = 0;
    std::int64_t q = 0;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::int64_t>()(k.p * 0x9E3779B97F4A7C15ULL ^ k.q);
    }
  };
  struct Step {
    Key key;
    double weight = 1.0;
  };

  double offset(const Key& k) const;
  double seed_value(double x) const;
  Key encode(const QField& offset) const;
  std::vector<double> enumerate(const std::vector<Step>& steps, double origin,
                                double reach) const;

  IntervalSet set_;
  SeedSpec seed_;
  RecurrenceOptions options_;
  std::vector<double> seed_coefficients_;
  double shift_ = 0.0;
  double target_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double first_length_ = 1.0;
  double last_length_ = 1.0;
  bool exact_keys_ = true;
  double rational_denominator_ = 1.0;
  double radical_scale_ = 0.0;  ///< sqrt(d) / common denominator of radical parts
  std::vector<Step> left_steps_;
  std::vector<Step> right_steps_;
};

/// A real function of one real variable; the union of every construction.
class Function {
 public:
  using Variant = std::variant<ConstantFunction, SineAffine, PeriodicSamples, RecurrenceExtension>;

  template <class T>
    requires(!std::is_same_v<std::remove_cvref_t<T>, Function> &&
             std::is_constructible_v<Variant, T &&>)
  Function(T&& f) : v_(std::forward<T>(f)) {}  // NOLINT(google-explicit-constructor)

  double operator()(double x) const {
    return std::visit([x](const auto& f) { return f(x); }, v_);
  }
  /// Points in (u, v) where the function may be non-smooth, sorted.
  std::vector<double> breakpoints(double u, double v) const;
  std::string_view kind() const;
  const Variant& variant() const { return v_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  Variant v_;
};

/// Lowest-degree monic seed (x^2 + beta x) compatible with the set.
SeedSpec default_seed(const IntervalSet& set, std::optional<double> target = std::nullopt);

/// Two-interval recurrence extension; rejects other interval counts.
RecurrenceExtension construct_recurrence_extension(const IntervalSet& set, SeedSpec seed,
                                                   RecurrenceOptions options = {});
/// Same scheme for any number of intervals.
RecurrenceExtension construct_recurrence_extension_n(const IntervalSet& set, SeedSpec seed,
                                                     RecurrenceOptions options = {});

/// sin(2 pi x / s) + C / (L + l) for sets where (L - l)/(2(L + H)) = n/m with m odd.
Function construct_sine_counterexample(const TwoIntervalParams& params, double constant);
/// sin(2 pi x / s) + C / ((n1 + n2) s) for commensurable lengths L = n1 s, l = n2 s.
Function construct_periodic_counterexample(const TwoIntervalParams& params, double constant);
/// Same period and mean, but with an arbitrary closed shape given by samples
/// over one period; the shape is shifted to the required mean.
Function construct_periodic_counterexample(const TwoIntervalParams& params, double constant,
                                           std::span<const double> shape);
/// s-periodic sine with mean C / (n1 s) where l1 + l2 + l3 = n1 s and gap = n2 s.
Function construct_three_interval_counterexample(const ThreeIntervalParams& params,
                                                 double constant);

/// sum_i f(a_i + t) - sum_i f(b_i + t).
template <class F>
double pointwise_residual(const F& f, const IntervalSet& set, double t) {
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    left += f(set.left(i).to_double() + t);
    right += f(set.right(i).to_double() + t);
  }
  return left - right;
}

struct PeriodCheck {
  bool periodic = false;
  double max_deviation = 0.0;
  double worst_x = 0.0;
};

/// max |f(x + tau) - f(x)| over n equally spaced x in [x0, x1].
template <class F>
PeriodCheck detect_period(const F& f, double tau, double x0, double x1, int n, double tol) {
  if (n < 2 || !(x1 > x0) || !(tau > 0.0)) {
    throw std::invalid_argument("detect_period needs n >= 2, x1 > x0 and tau > 0");
  }
  PeriodCheck out;
  out.worst_x = x0;
  for (int i = 0; i < n; ++i) {
    double x = x0 + (x1 - x0) * i / (n - 1);
    double dev = std::abs(f(x + tau) - f(x));
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.worst_x = x;
    }
  }
  out.periodic = out.max_deviation <= tol;
  return out;
}

}  // namespace pompeiu

#endif  // POMPEIU_FUNCTIONS_HPP
