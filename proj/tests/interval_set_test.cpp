#include <gtest/gtest.h>

#include "pompeiu/interval_set.hpp"
#include "support/generators.hpp"

namespace pompeiu {
namespace {

QField q(const char* s) { return QField::parse(s); }

IntervalSet set_of(std::initializer_list<const char*> endpoints) {
  std::vector<QField> v;
  for (const char* e : endpoints) v.push_back(q(e));
  return IntervalSet(std::move(v));
}

TEST(IntervalSet, RejectsBadLayouts) {
  EXPECT_THROW(IntervalSet(std::vector<QField>{}), IntervalError);
  EXPECT_THROW(set_of({"0", "1", "2"}), IntervalError);
  EXPECT_THROW(set_of({"0", "1", "1", "2"}), IntervalError);  // touching
  EXPECT_THROW(set_of({"1", "0"}), IntervalError);
  EXPECT_THROW(set_of({"0", "1", "2", "2"}), IntervalError);
  EXPECT_THROW(set_of({"0", "sqrt(2)", "2", "sqrt(3)+2"}), IntervalError);
}

TEST(IntervalSet, Measure) {
  EXPECT_EQ(set_of({"0", "1", "2", "4+sqrt(2)"}).measure(), q("3 + sqrt(2)"));
}

TEST(NormalizeTwo, Examples) {
  auto p = normalize_two(set_of({"0", "1", "2", "3"}));
  EXPECT_EQ(p.shorter, QField(1));
  EXPECT_EQ(p.gap, QField(1));
  EXPECT_EQ(p.longer, QField(1));

  p = normalize_two(set_of({"0", "sqrt(2)", "sqrt(2)+1", "2*sqrt(2)+1"}));
  EXPECT_EQ(p.shorter, QField::sqrt(2));
  EXPECT_EQ(p.longer, QField::sqrt(2));
  EXPECT_EQ(p.gap, QField(1));

  p = normalize_two(set_of({"5", "6", "13/2", "13/2+sqrt(2)"}));
  EXPECT_EQ(p.shorter, QField(1));
  EXPECT_EQ(p.gap, q("1/2"));
  EXPECT_EQ(p.longer, QField::sqrt(2));
}

TEST(NormalizeTwo, OrdersLengths) {
  auto p = normalize_two(set_of({"0", "3", "4", "5"}));
  EXPECT_EQ(p.shorter, QField(1));
  EXPECT_EQ(p.longer, QField(3));
  EXPECT_THROW(normalize_two(set_of({"0", "1"})), IntervalError);
}

TEST(ApplyIsometry, Examples) {
  auto set = set_of({"0", "1", "2", "3"});
  EXPECT_EQ(apply_isometry(set, {5.0, false}), (std::vector<Segment>{{5, 6}, {7, 8}}));
  EXPECT_EQ(apply_isometry(set, {0.0, true}), (std::vector<Segment>{{-3, -2}, {-1, 0}}));
  EXPECT_EQ(apply_isometry(set_of({"0", "1", "2", "4"}), {4.0, true}),
            (std::vector<Segment>{{0, 2}, {3, 4}}));
}

TEST(MatchThree, EqualGapsOnly) {
  auto m = match_three(set_of({"0", "1", "2", "3", "4", "4+sqrt(2)"}));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->first, QField(1));
  EXPECT_EQ(m->gap, QField(1));
  EXPECT_EQ(m->third, QField::sqrt(2));
  EXPECT_FALSE(match_three(set_of({"0", "1", "2", "3", "5", "6"})));
  EXPECT_EQ(ThreeIntervalParams::make(q("1"), q("3"), q("sqrt(2)"), q("2-sqrt(2)")).to_set(),
            set_of({"0", "1", "4", "4+sqrt(2)", "7+sqrt(2)", "9"}));
}

TEST(IntervalSetProperty, IsometriesPreserveMeasureAndOrder) {
  testing::Gen g(7);
  for (int i = 0; i < 300; ++i) {
    auto set = g.two_params(2).to_set();
    Isometry sigma{g.real(-50, 50), g.coin()};
    auto image = apply_isometry(set, sigma);
    double measure = 0.0;
    for (std::size_t k = 0; k < image.size(); ++k) {
      EXPECT_LT(image[k].lo, image[k].hi);
      if (k > 0) {
        EXPECT_LT(image[k - 1].hi, image[k].lo);
      }
      measure += image[k].length();
    }
    EXPECT_NEAR(measure, set.measure().to_double(), 1e-12 * (1 + std::abs(sigma.shift)));
  }
}

TEST(IntervalSetProperty, NormalizeIgnoresTranslationAndReflection) {
  testing::Gen g(8);
  for (int i = 0; i < 300; ++i) {
    auto p = g.two_params(3);
    auto set = p.to_set();
    auto moved = set.translated(g.element(3));
    for (const IntervalSet& s : {moved, moved.reflected(), set.reflected()}) {
      auto r = normalize_two(s);
      EXPECT_EQ(r.shorter, p.shorter);
      EXPECT_EQ(r.gap, p.gap);
      EXPECT_EQ(r.longer, p.longer);
    }
  }
}

}  // namespace
}  // namespace pompeiu
