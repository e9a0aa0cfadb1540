#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pompeiu/decision.hpp"
#include "pompeiu/functions.hpp"
#include "pompeiu/verifier.hpp"
#include "support/generators.hpp"

namespace pompeiu {
namespace {

QField q(const char* s) { return QField::parse(s); }

IntervalSet unit_pair() { return IntervalSet({q("0"), q("1"), q("2"), q("3")}); }

/// Seed x(3 - x) on [0, 3]; compatible with [0,1] U [2,3].
SeedSpec cubic_free_seed() { return SeedSpec{Polynomial{{QField(0), QField(3), QField(-1)}}, {}}; }

TEST(Recurrence, MatchesBruteForceValues) {
  // Values from an independent brute-force evaluation of the corrected
  // left/right recurrences with exact rational arithmetic.
  RecurrenceExtension f(unit_pair(), cubic_free_seed());
  EXPECT_NEAR(f(-0.5), 0.25, 1e-13);
  EXPECT_NEAR(f(-1.5), 1.25, 1e-13);
  EXPECT_NEAR(f(-7.0 / 3.0), 20.0 / 9.0, 1e-13);
  EXPECT_NEAR(f(-5.0), 0.0, 1e-13);
  EXPECT_NEAR(f(17.0 / 4.0), 11.0 / 16.0, 1e-13);
  EXPECT_NEAR(f(7.0), 0.0, 1e-13);
  EXPECT_NEAR(f(11.5), 0.25, 1e-13);
}

TEST(Recurrence, ResidualVanishes) {
  Function f = RecurrenceExtension(unit_pair(), cubic_free_seed());
  for (double t : {-0.5, -9.0 / 4.0, 13.0 / 5.0}) {
    EXPECT_NEAR(pointwise_residual(f, unit_pair(), t), 0.0, 1e-12) << t;
  }
}

TEST(Recurrence, ReproducesSeedInside) {
  RecurrenceExtension f(unit_pair(), cubic_free_seed());
  for (int i = 0; i <= 30; ++i) {
    double x = 3.0 * i / 30;
    EXPECT_EQ(f(x), x * (3.0 - x));
    EXPECT_EQ(f.level(x), 0);
  }
}

TEST(Recurrence, IncompatibleSeedReportsResidual) {
  SeedSpec bad{Polynomial{{QField(0), QField(1), QField(1)}}, {}};
  try {
    RecurrenceExtension f(unit_pair(), bad);
    FAIL() << "accepted an incompatible seed";
  } catch (const IncompatibleSeed& e) {
    // f(0) + f(2) - f(1) - f(3) = 0 + 6 - 2 - 12.
    EXPECT_EQ(e.residual(), QField(-8));
  }
}

TEST(Recurrence, DepthCap) {
  RecurrenceExtension f(unit_pair(), cubic_free_seed(), RecurrenceOptions{4});
  EXPECT_NO_THROW(f(-3.5));
  EXPECT_THROW(f(-4.5), DepthExceeded);
  EXPECT_THROW(f(8.5), DepthExceeded);
  EXPECT_EQ(f.level(-3.5), 4);
}

TEST(Recurrence, DefaultSeedIsMonicQuadratic) {
  SeedSpec s = default_seed(unit_pair());
  ASSERT_EQ(s.polynomial.coefficients.size(), 3u);
  EXPECT_EQ(s.polynomial.coefficients[1], QField(-3));
  EXPECT_EQ(s.polynomial.coefficients[2], QField(1));
  // Integral over the set of x^2 - 3x is -7/3; a target shifts it.
  RecurrenceExtension f(unit_pair(), default_seed(unit_pair(), 2.0));
  EXPECT_NEAR(f.target(), 2.0, 1e-15);
  EXPECT_NEAR(integrate(Function(f), 0.0, 1.0).value + integrate(Function(f), 2.0, 3.0).value, 2.0,
              1e-12);
}

TEST(Recurrence, TwoIntervalEntryRejectsOtherCounts) {
  IntervalSet three({q("0"), q("1"), q("2"), q("3"), q("4"), q("5")});
  EXPECT_THROW(construct_recurrence_extension(three, default_seed(three)), IntervalError);
}

TEST(Recurrence, ThreeIntervalConstantSeed) {
  IntervalSet three({q("0"), q("1"), q("2"), q("3"), q("4"), q("5")});
  RecurrenceExtension f =
      construct_recurrence_extension_n(three, SeedSpec{Polynomial{{QField(4)}}, {}});
  for (double x : {-7.3, -1.0, 2.5, 9.9}) EXPECT_NEAR(f(x), 4.0, 1e-12);
}

TEST(Recurrence, ThreeIntervalQuadraticSeedIsTranslationInvariant) {
  IntervalSet three({q("0"), q("1"), q("2"), q("3"), q("4"), q("5")});
  Function f = construct_recurrence_extension_n(three, default_seed(three));
  auto report = verify_invariance(f, three, IsometryFamily::translations,
                                  GridSampler{-5.0, 5.0, 101});
  EXPECT_LE(report.relative_deviation, 1e-8);
  EXPECT_GT(report.sup_abs_f, 1.0);
}

TEST(Recurrence, IrrationalEndpoints) {
  IntervalSet set({q("0"), q("1"), q("1+sqrt(2)"), q("1+2*sqrt(2)")});
  Function f = construct_recurrence_extension(set, default_seed(set));
  for (int i = 0; i < 200; ++i) {
    double t = -6.0 + 12.0 * i / 199;
    EXPECT_NEAR(pointwise_residual(f, set, t), 0.0, 1e-9) << t;
  }
}

TEST(Recurrence, KinksAreWhereDerivativeJumps) {
  RecurrenceExtension f(unit_pair(), cubic_free_seed());
  auto kinks = f.kinks(-2.5, 5.5);
  ASSERT_FALSE(kinks.empty());
  for (double k : {-2.0, -1.0, 4.0, 5.0}) {
    EXPECT_NE(std::find(kinks.begin(), kinks.end(), k), kinks.end()) << k;
  }
  EXPECT_TRUE(std::is_sorted(kinks.begin(), kinks.end()));
}

TEST(RecurrenceProperty, RandomRationalSetsHaveZeroResidual) {
  testing::Gen g(21);
  for (int i = 0; i < 40; ++i) {
    TwoIntervalParams p = TwoIntervalParams::make(QField(g.positive_rational(8, 4)),
                                                  QField(g.positive_rational(8, 4)),
                                                  QField(g.positive_rational(8, 4)));
    IntervalSet set = p.to_set();
    Function f = construct_recurrence_extension(set, default_seed(set));
    // Eight extension levels on either side.
    double left = 8 * set.length(0).to_double();
    double right = 8 * set.length(1).to_double();
    for (int k = 0; k < 25; ++k) {
      double t = g.real(-left, right);
      double scale = 1.0 + std::abs(f(set.first().to_double() + t));
      EXPECT_NEAR(pointwise_residual(f, set, t), 0.0, 1e-9 * scale) << set.last() << " t=" << t;
    }
  }
}

TEST(SineAffine, ClosedFormIntegral) {
  SineAffine s{2.0, 0.75, 0.3, -1.0, {}};
  Integral numeric = integrate([&](double x) { return s(x); }, -3.1, 4.7);
  EXPECT_NEAR(s.integral(-3.1, 4.7), numeric.value, 1e-12);
  // A whole number of periods integrates to mean * length.
  EXPECT_NEAR(s.integral(0.2, 0.2 + 4 * 0.75), -3.0, 1e-13);
}

TEST(SineCounterexample, Examples) {
  auto p = TwoIntervalParams::make(q("sqrt(2)"), q("3/2 - sqrt(2)"), q("1 + sqrt(2)"));
  Function f = construct_sine_counterexample(p, 0.0);
  const SineAffine* s = f.get_if<SineAffine>();
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->exact_period, QField(1));
  EXPECT_EQ(s->mean, 0.0);
  Function g5 = construct_sine_counterexample(p, 5.0);
  s = g5.get_if<SineAffine>();
  EXPECT_NEAR(s->mean, 1.3060193748187072126, 1e-15);  // 5 / (1 + 2 sqrt 2)

  auto equal = TwoIntervalParams::make(q("1"), q("1"), q("1"));
  Function g6 = construct_sine_counterexample(equal, 6.0);
  s = g6.get_if<SineAffine>();
  EXPECT_EQ(s->exact_period, QField(4));
  EXPECT_DOUBLE_EQ(s->mean, 3.0);

  auto holds = TwoIntervalParams::make(q("1"), q("sqrt(2)"), q("sqrt(2)"));
  EXPECT_THROW(construct_sine_counterexample(holds, 0.0), NotApplicable);
}

TEST(PeriodicCounterexample, Examples) {
  auto f = construct_periodic_counterexample(TwoIntervalParams::make(q("1"), q("5"), q("2")), 6.0);
  const SineAffine* s = f.get_if<SineAffine>();
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->exact_period, QField(1));
  EXPECT_DOUBLE_EQ(s->mean, 2.0);
  EXPECT_NEAR(integrate(f, 0.0, 1.0).value, 2.0, 1e-12);

  Function unit = construct_periodic_counterexample(TwoIntervalParams::make(q("1"), q("1"), q("1")), 0.0);
  s = unit.get_if<SineAffine>();
  EXPECT_EQ(s->exact_period, QField(1));
  EXPECT_EQ(s->mean, 0.0);

  Function half =
      construct_periodic_counterexample(TwoIntervalParams::make(q("1/2"), q("1"), q("3/2")), 4.0);
  s = half.get_if<SineAffine>();
  EXPECT_EQ(s->exact_period, q("1/2"));
  EXPECT_DOUBLE_EQ(s->mean, 2.0);

  auto irrational = TwoIntervalParams::make(q("1"), q("1"), q("sqrt(2)"));
  EXPECT_THROW(construct_periodic_counterexample(irrational, 0.0), NotApplicable);
}

TEST(PeriodicCounterexample, ArbitraryShape) {
  auto p = TwoIntervalParams::make(q("1"), q("1/3"), q("2"));
  std::vector<double> shape = {0.0, 1.0, 3.0, -1.0, 0.5, 0.0};
  Function f = construct_periodic_counterexample(p, 6.0, shape);
  ASSERT_NE(f.get_if<PeriodicSamples>(), nullptr);
  auto report = verify_invariance(f, p.to_set(), IsometryFamily::full,
                                  RandomSampler{3, 300, -10.0, 10.0});
  EXPECT_LE(report.max_abs_deviation, 1e-9);
  EXPECT_NEAR(report.c_estimate, 6.0, 1e-9);
}

TEST(PeriodicSamples, InterpolatesAndIsContinuous) {
  std::vector<double> samples = {1.0, 2.0, 0.0, -1.0, 1.0};
  PeriodicSamples f(0.5, 2.0, samples);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(f(0.5 + 0.5 * k), samples[k], 1e-14);
  EXPECT_NEAR(f(2.5 - 1e-12), f(0.5), 1e-10);
  EXPECT_NEAR(f(-7.3), f(-7.3 + 2.0), 1e-12);
  EXPECT_DOUBLE_EQ(f.mean(), 0.5);
  EXPECT_THROW(PeriodicSamples(0.0, 1.0, {1.0, 2.0, 1.5}), std::invalid_argument);
  EXPECT_THROW(PeriodicSamples(0.0, 1.0, {1.0, 2.0, 3.0, 0.0}), std::invalid_argument);
}

TEST(ThreeIntervalCounterexample, Examples) {
  auto unit = ThreeIntervalParams::make(q("1"), q("1"), q("1"), q("1"));
  Function f = construct_three_interval_counterexample(unit, 3.0);
  const SineAffine* s = f.get_if<SineAffine>();
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->exact_period, QField(1));
  EXPECT_DOUBLE_EQ(s->mean, 1.0);

  auto mixed = ThreeIntervalParams::make(q("1"), q("3"), q("sqrt(2)"), q("2 - sqrt(2)"));
  Function g = construct_three_interval_counterexample(mixed, 0.0);
  s = g.get_if<SineAffine>();
  EXPECT_EQ(s->exact_period, QField(3));
  EXPECT_EQ(s->mean, 0.0);

  auto irrational = ThreeIntervalParams::make(q("1"), q("1"), q("1"), q("sqrt(2)"));
  EXPECT_THROW(construct_three_interval_counterexample(irrational, 0.0), NotApplicable);
}

TEST(PointwiseResidual, Examples) {
  Function c = ConstantFunction{3.0};
  EXPECT_EQ(pointwise_residual(c, unit_pair(), 1.7), 0.0);
  SineAffine s{1.0, 1.0, 0.0, 0.0, {}};
  for (double t : {-2.2, 0.1, 5.5}) EXPECT_NEAR(pointwise_residual(s, unit_pair(), t), 0.0, 1e-14);
}

TEST(DetectPeriod, Examples) {
  SineAffine s{1.0, 1.0, 0.0, 0.0, {}};
  auto same = detect_period(s, 1.0, 0.0, 4.0, 401, 1e-12);
  EXPECT_TRUE(same.periodic);
  EXPECT_LE(same.max_deviation, 1e-12);

  auto half = detect_period(s, 0.5, 0.0, 1.0, 401, 1e-12);
  EXPECT_FALSE(half.periodic);
  EXPECT_NEAR(half.max_deviation, 2.0, 1e-12);
  EXPECT_NEAR(half.worst_x, 0.25, 1e-12);

  EXPECT_TRUE(detect_period(ConstantFunction{2.0}, 0.37, -3.0, 3.0, 50, 1e-12).periodic);
  EXPECT_THROW(detect_period(s, 0.0, 0.0, 1.0, 10, 1e-12), std::invalid_argument);
}

TEST(SineProperty, RangeWitnessesNonConstancy) {
  testing::Gen g(31);
  for (int i = 0; i < 50; ++i) {
    auto p = g.two_params(2);
    Verdict v = decide_two_interval(p, g.real(-5, 5));
    if (v.holds) continue;
    const SineAffine* s = v.counterexample->get_if<SineAffine>();
    ASSERT_NE(s, nullptr);
    double lo = 1e300;
    double hi = -1e300;
    for (int k = 0; k <= 400; ++k) {
      double y = (*s)(s->period * k / 400.0);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    EXPECT_GE(hi - lo, 2.0 * s->amplitude - 1e-9);
  }
}

}  // namespace
}  // namespace pompeiu
