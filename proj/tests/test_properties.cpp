#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace property_checks;

TEST(Properties, PushforwardOfPullbackIsIdentity) {
  auto f = pushforward_pullback(1000);
  EXPECT_FALSE(f) << *f;
}

TEST(Properties, ProjectionFormula) {
  auto f = projection_formula(300);
  EXPECT_FALSE(f) << *f;
}

TEST(Properties, SegreIndependentOfResolutionOrder) {
  auto f = segre_order(100);
  EXPECT_FALSE(f) << *f;
}

TEST(Properties, RefinedClassHasPuncturingDegree) {
  auto f = corpus_homogeneity();
  EXPECT_FALSE(f) << *f;
}

TEST(Properties, FaithfulLiftInvariants) {
  auto f = faithful_lift_invariants();
  EXPECT_FALSE(f) << *f;
}
