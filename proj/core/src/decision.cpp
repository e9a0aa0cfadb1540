#include "pompeiu/decision.hpp"

namespace pompeiu {

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::h1_fails:
      return "H1_fails";
    case VerdictReason::h2_odd:
      return "H2_odd";
    case VerdictReason::holds_not_h2:
      return "holds_not_H2";
    case VerdictReason::holds_h2_even:
      return "holds_H2_even";
  }
  return "unknown";
}

std::string_view to_string(Parity parity) { return parity == Parity::even ? "even" : "odd"; }

ConditionReport classify_conditions(const TwoIntervalParams& params) {
  ConditionReport report;
  report.h1 = !is_rational_ratio(params.shorter, params.longer).is_rational;
  RationalityWitness skew = is_rational_ratio(params.longer - params.shorter,
                                              QField(2) * (params.longer + params.gap));
  if (skew.is_rational) {
    report.m_parity = (skew.m % 2 == 0) ? Parity::even : Parity::odd;
    report.h2 = std::move(skew);
  }
  return report;
}

Verdict decide_two_interval(const TwoIntervalParams& params, double constant) {
  Verdict v;
  v.params = params;
  v.conditions = classify_conditions(params);
  const ConditionReport& c = v.conditions;
  if (!c.h1) {
    v.holds = false;
    v.reason = VerdictReason::h1_fails;
    v.counterexample = construct_periodic_counterexample(params, constant);
  } else if (c.h2 && c.m_parity == Parity::odd) {
    v.holds = false;
    v.reason = VerdictReason::h2_odd;
    v.counterexample = construct_sine_counterexample(params, constant);
  } else {
    v.holds = true;
    v.reason = c.h2 ? VerdictReason::holds_h2_even : VerdictReason::holds_not_h2;
  }
  return v;
}

TwoIntervalParams hole_transform(const TwoIntervalParams& params) {
  return {params.shorter, QField(3) * params.gap + params.longer + params.shorter,
          params.longer};
}

bool hole_equiv_check(const TwoIntervalParams& params) {
  const QField skew = params.longer - params.shorter;
  const QField beta = skew / (params.longer + params.gap);
  const QField alpha = skew / (params.longer + hole_transform(params).gap);
  if (beta.is_rational() != alpha.is_rational()) return false;
  // beta < 1 since l > 0 and H > 0, so both denominators are nonzero.
  return alpha == beta / (QField(3) - beta) && beta == QField(3) * alpha / (QField(1) + alpha);
}

namespace {

std::optional<CommonPeriod> split(const QField& big, const QField& small) {
  RationalityWitness w = is_rational_ratio(big, small);
  if (!w.is_rational) return std::nullopt;
  return CommonPeriod{small / QField(Rational(w.m)), w.n, w.m};
}

}  // namespace

std::optional<CommonPeriod> length_period(const TwoIntervalParams& params) {
  return split(params.longer, params.shorter);
}

std::optional<CommonPeriod> skew_period(const TwoIntervalParams& params) {
  return split(params.longer - params.shorter, QField(2) * (params.longer + params.gap));
}

std::optional<CommonPeriod> three_interval_rational_test(const ThreeIntervalParams& params) {
  return split(params.first + params.second + params.third, params.gap);
}

}  // namespace pompeiu
