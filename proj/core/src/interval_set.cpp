#include "pompeiu/interval_set.hpp"

#include <algorithm>
#include <optional>

namespace pompeiu {

IntervalSet::IntervalSet(std::vector<QField> endpoints) : endpoints_(std::move(endpoints)) {
  if (endpoints_.empty() || endpoints_.size() % 2 != 0) {
    throw IntervalError("an interval set needs a positive, even number of endpoints");
  }
  try {
    radicand_ = common_radicand(endpoints_);
  } catch (const FieldError& e) {
    throw IntervalError(e.what());
  }
  for (std::size_t i = 0; i + 1 < endpoints_.size(); ++i) {
    if (!(endpoints_[i] < endpoints_[i + 1])) {
      throw IntervalError("endpoints must be strictly increasing (offending pair " +
                          endpoints_[i].to_string() + ", " + endpoints_[i + 1].to_string() +
                          ")");
    }
  }
}

IntervalSet IntervalSet::from_pairs(std::span<const std::pair<QField, QField>> intervals) {
  std::vector<QField> endpoints;
  endpoints.reserve(2 * intervals.size());
  for (const auto& [lo, hi] : intervals) {
    endpoints.push_back(lo);
    endpoints.push_back(hi);
  }
  return IntervalSet(std::move(endpoints));
}

QField IntervalSet::measure() const {
  QField total;
  for (std::size_t i = 0; i < size(); ++i) total += length(i);
  return total;
}

std::vector<Segment> IntervalSet::to_segments() const {
  std::vector<Segment> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.push_back({left(i).to_double(), right(i).to_double()});
  }
  return out;
}

IntervalSet IntervalSet::translated(const QField& shift) const {
  std::vector<QField> moved;
  moved.reserve(endpoints_.size());
  for (const QField& e : endpoints_) moved.push_back(e + shift);
  return IntervalSet(std::move(moved));
}

IntervalSet IntervalSet::reflected() const {
  std::vector<QField> mirrored;
  mirrored.reserve(endpoints_.size());
  for (auto it = endpoints_.rbegin(); it != endpoints_.rend(); ++it) mirrored.push_back(-*it);
  return IntervalSet(std::move(mirrored));
}

TwoIntervalParams TwoIntervalParams::make(QField first_length, QField gap, QField second_length) {
  if (sign(first_length) <= 0 || sign(gap) <= 0 || sign(second_length) <= 0) {
    throw IntervalError("two-interval lengths and gap must be positive");
  }
  if (first_length > second_length) std::swap(first_length, second_length);
  return {std::move(first_length), std::move(gap), std::move(second_length)};
}

IntervalSet TwoIntervalParams::to_set() const {
  QField c = shorter + gap;
  return IntervalSet({QField(0), shorter, c, c + longer});
}

ThreeIntervalParams ThreeIntervalParams::make(QField first, QField gap, QField second,
                                              QField third) {
  if (sign(first) <= 0 || sign(gap) <= 0 || sign(second) <= 0 || sign(third) <= 0) {
    throw IntervalError("three-interval lengths and gap must be positive");
  }
  return {std::move(first), std::move(gap), std::move(second), std::move(third)};
}

IntervalSet ThreeIntervalParams::to_set() const {
  QField a2 = first + gap;
  QField b2 = a2 + second;
  QField a3 = b2 + gap;
  return IntervalSet({QField(0), first, a2, b2, a3, a3 + third});
}

TwoIntervalParams normalize_two(const IntervalSet& set) {
  if (set.size() != 2) {
    throw IntervalError("expected a two-interval set, got " + std::to_string(set.size()) +
                        " intervals");
  }
  return TwoIntervalParams::make(set.length(0), set.gap(0), set.length(1));
}

std::optional<ThreeIntervalParams> match_three(const IntervalSet& set) {
  if (set.size() != 3) {
    throw IntervalError("expected a three-interval set, got " + std::to_string(set.size()) +
                        " intervals");
  }
  if (set.gap(0) != set.gap(1)) return std::nullopt;
  return ThreeIntervalParams::make(set.length(0), set.gap(0), set.length(1), set.length(2));
}

std::vector<Segment> apply_isometry(std::span<const Segment> segments, const Isometry& sigma) {
  std::vector<Segment> out;
  out.reserve(segments.size());
  for (const Segment& s : segments) {
    double u = sigma(s.lo);
    double v = sigma(s.hi);
    out.push_back({std::min(u, v), std::max(u, v)});
  }
  if (sigma.reflected) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Segment> apply_isometry(const IntervalSet& set, const Isometry& sigma) {
  std::vector<Segment> segments = set.to_segments();
  return apply_isometry(segments, sigma);
}

}  // namespace pompeiu
