#ifndef POMPEIU_INTERVAL_SET_HPP
#define POMPEIU_INTERVAL_SET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pompeiu/exact_field.hpp"

namespace pompeiu {

class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Floating closed interval, as produced by an isometry image.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Ordered disjoint union of N >= 1 compact intervals with exact endpoints
/// a_1 < b_1 < a_2 < ... < a_N < b_N, all in one quadratic field.
/// Touching intervals (b_i == a_{i+1}) are rejected.
class IntervalSet {
 public:
  explicit IntervalSet(std::vector<QField> endpoints);
  static IntervalSet from_pairs(std::span<const std::pair<QField, QField>> intervals);

  std::size_t size() const { return endpoints_.size() / 2; }
  std::span<const QField> endpoints() const { return endpoints_; }
  const QField& left(std::size_t i) const { return endpoints_[2 * i]; }
  const QField& right(std::size_t i) const { return endpoints_[2 * i + 1]; }
  const QField& first() const { return endpoints_.front(); }
  const QField& last() const { return endpoints_.back(); }
  std::int64_t radicand() const { return radicand_; }

  QField length(std::size_t i) const { return right(i) - left(i); }
  /// Gap between interval i and interval i + 1.
  QField gap(std::size_t i) const { return left(i + 1) - right(i); }
  QField measure() const;

  std::vector<Segment> to_segments() const;
  IntervalSet translated(const QField& shift) const;
  IntervalSet reflected() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<QField> endpoints_;
  std::int64_t radicand_ = 1;
};

/// Shape of a two-interval set: [0, shorter] U [shorter + gap, shorter + gap + longer].
/// The two lengths are ordered so that shorter <= longer; reflecting the set
/// is what makes that ordering free.
struct TwoIntervalParams {
  QField shorter;
  QField gap;
  QField longer;

  /// Validates positivity and orders the lengths.
  static TwoIntervalParams make(QField first_length, QField gap, QField second_length);
  IntervalSet to_set() const;
};

/// Equal-gap three-interval layout
/// [0, l1] U [l1 + g, l1 + g + l2] U [l1 + l2 + 2g, l1 + l2 + l3 + 2g].
struct ThreeIntervalParams {
  QField first;
  QField gap;
  QField second;
  QField third;

  static ThreeIntervalParams make(QField first, QField gap, QField second, QField third);
  IntervalSet to_set() const;
};

/// x -> (reflected ? -x : x) + shift.
struct Isometry {
  double shift = 0.0;
  bool reflected = false;

  double operator()(double x) const { return (reflected ? -x : x) + shift; }
};

/// Throws IntervalError unless the set has exactly two intervals.
TwoIntervalParams normalize_two(const IntervalSet& set);

/// Recognizes the equal-gap three-interval layout; empty when the gaps differ.
std::optional<ThreeIntervalParams> match_three(const IntervalSet& set);

/// Image of the set under the isometry, sorted left to right.
std::vector<Segment> apply_isometry(const IntervalSet& set, const Isometry& sigma);
std::vector<Segment> apply_isometry(std::span<const Segment> segments, const Isometry& sigma);

}  // namespace pompeiu

#endif  // POMPEIU_INTERVAL_SET_HPP
