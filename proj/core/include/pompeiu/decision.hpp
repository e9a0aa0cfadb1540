#ifndef POMPEIU_DECISION_HPP
#define POMPEIU_DECISION_HPP

#include <optional>
#include <string_view>

#include "pompeiu/exact_field.hpp"
#include "pompeiu/functions.hpp"
#include "pompeiu/interval_set.hpp"

namespace pompeiu {

enum class Parity { even, odd };

/// Exact classification of a two-interval shape (l = shorter, L = longer,
/// H = gap):
///   H1: l / L is irrational;
///   H2: (L - l) / (2 (L + H)) = n / m in lowest terms (absent when irrational).
/// L == l gives n = 0, m = 1.
struct ConditionReport {
  bool h1 = false;
  std::optional<RationalityWitness> h2;
  std::optional<Parity> m_parity;
};

enum class VerdictReason { h1_fails, h2_odd, holds_not_h2, holds_h2_even };

std::string_view to_string(VerdictReason reason);
std::string_view to_string(Parity parity);

struct Verdict {
  bool holds = false;
  VerdictReason reason = VerdictReason::h1_fails;
  ConditionReport conditions;
  TwoIntervalParams params;
  /// Present exactly when the property fails.
  std::optional<Function> counterexample;
};

ConditionReport classify_conditions(const TwoIntervalParams& params);

/// The property holds iff H1 and (not H2 or m even). On failure a
/// counterexample with integral `constant` over every isometric image is
/// attached: the periodic construction when H1 fails, the sine construction
/// when H2 holds with m odd.
Verdict decide_two_interval(const TwoIntervalParams& params, double constant = 0.0);

/// Replaces the gap H by 3H + L + l.
TwoIntervalParams hole_transform(const TwoIntervalParams& params);

/// Checks, exactly, that beta = (L - l)/(L + H) and alpha = (L - l)/(L + H')
/// are rational together and satisfy alpha = beta / (3 - beta),
/// beta = 3 alpha / (1 + alpha). Always true; false signals a bug.
bool hole_equiv_check(const TwoIntervalParams& params);

/// A common period s of two commensurable quantities: big = n1 s, small = n2 s.
struct CommonPeriod {
  QField period;
  BigInt n1;
  BigInt n2;
};

/// longer = n1 s and shorter = n2 s; empty when l / L is irrational.
std::optional<CommonPeriod> length_period(const TwoIntervalParams& params);

/// L - l = n1 s and 2 (L + H) = n2 s with n1 / n2 the reduced H2 fraction;
/// empty when that ratio is irrational.
std::optional<CommonPeriod> skew_period(const TwoIntervalParams& params);

/// l1 + l2 + l3 = n1 s and gap = n2 s with n1 / n2 in lowest terms; empty
/// when the ratio is irrational.
std::optional<CommonPeriod> three_interval_rational_test(const ThreeIntervalParams& params);

}  // namespace pompeiu

#endif  // POMPEIU_DECISION_HPP
