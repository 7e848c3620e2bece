#include <gtest/gtest.h>

#include "helpers.hpp"
#include "tropref/puncture.hpp"

using namespace tropref;
using namespace testing_helpers;

namespace {

const char* kF1Answer = "3*Z1^2 + Z2^2 + 4*W12 + W0 + 3*W1 + W2 + 3*W3 + W4 + 3*W5 + W6 + 3*W7 + W8";

PrincipalizeOptions forced(const io::Fixture& fx) {
  PrincipalizeOptions o;
  o.forced_centers = fx.forced_centers;
  return o;
}

}  // namespace

TEST(Components, RankOneHasTwoRays) {
  auto fx = load_fixture("pr-hyperplane.json");
  auto comps = puncturing_components(*fx.complex, fx.offsets);
  EXPECT_EQ(comps, (std::vector<RaySet>{{"ray1"}, {"ray2"}}));
}

TEST(Components, F1HasThreeComponents) {
  auto fx = load_fixture("f1-blowup.json");
  auto comps = puncturing_components(*fx.complex, fx.offsets);
  EXPECT_EQ(comps, (std::vector<RaySet>{{"Y1", "Y2"}, {"Z1"}, {"Z2"}}));
}

TEST(Components, NoPuncturesGiveWholeSpace) {
  auto c = make_complex({"a"}, {{"a"}});
  EXPECT_EQ(puncturing_components(*c, PuncturingData{}), (std::vector<RaySet>{{}}));
  EXPECT_EQ(refined_class(c, PuncturingData{}).cls, ChowClass::unit(c));
}

TEST(Principalize, SingleGeneratorNeedsNoSteps) {
  auto fx = load_fixture("pr-hyperplane.json");
  auto p = principalize(fx.complex, puncturing_ideal(fx.offsets, IdealMode::Offsets));
  EXPECT_TRUE(p.trace.empty());
  EXPECT_EQ(p.cartier, fx.offsets.offsets[0].f);
}

TEST(Principalize, MaximalIdealOfAPlane) {
  auto c = make_complex({"x1", "x2"}, {{"x1", "x2"}});
  MonomialIdeal ideal{{PLFunction{{{"x1", 1}, {"x2", 0}}}, PLFunction{{{"x1", 0}, {"x2", 1}}}}};
  auto p = principalize(c, ideal);
  ASSERT_EQ(p.trace.size(), 1u);
  const RayId& e = p.trace[0].step.new_ray;
  EXPECT_EQ(p.cartier.at(e), 1);
  EXPECT_EQ(p.cartier.at("x1"), 0);
  EXPECT_EQ(p.cartier.at("x2"), 0);
  // s(0, A^2) = [0]: the codimension 2 part is x1 x2.
  EXPECT_EQ(segre_class(c, ideal, 2), poly(c, "x1*x2"));
}

TEST(Principalize, StepBudgetIsEnforced) {
  auto c = make_complex({"x1", "x2"}, {{"x1", "x2"}});
  MonomialIdeal ideal{{PLFunction{{{"x1", 5}, {"x2", 0}}}, PLFunction{{{"x1", 0}, {"x2", 7}}}}};
  PrincipalizeOptions o;
  o.max_steps = 1;
  EXPECT_THROW(principalize(c, ideal, o), MathError);
}

TEST(Segre, PrincipalIdealIsAlternatingSeries) {
  auto c = make_complex({"a", "b"}, {{"a", "b"}});
  MonomialIdeal ideal{{PLFunction{{{"a", 1}, {"b", 0}}}}};
  EXPECT_EQ(segre_class(c, ideal, 3), poly(c, "a - a^2 + a^3"));
}

TEST(Segre, F1PartsWithForcedCenter) {
  auto fx = load_fixture("f1-blowup.json");
  auto ideal = puncturing_ideal(fx.offsets, fx.mode);
  auto s = segre_class(fx.complex, ideal, 2, forced(fx));
  EXPECT_EQ(truncate(s, 1), poly(fx.complex, "Z1 + Z2"));
  EXPECT_EQ(truncate(s, 2), poly(fx.complex, "-Z1^2 - Z2^2 - 2*W12 + W0"));
}

TEST(Segre, F1ResolutionOrderDoesNotMatter) {
  auto fx = load_fixture("f1-blowup.json");
  auto ideal = puncturing_ideal(fx.offsets, fx.mode);
  auto base = segre_class(fx.complex, ideal, 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PrincipalizeOptions o;
    o.seed = seed;
    EXPECT_EQ(segre_class(fx.complex, ideal, 2, o), base) << "seed " << seed;
  }
}

TEST(RefinedClass, RankOneHyperplane) {
  auto fx = load_fixture("pr-hyperplane.json");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode);
  EXPECT_EQ(rc.cls, poly(fx.complex, "ray1 + ray2"));
  // k_P = 1: the refined class is the fundamental class of V, here the
  // divisor of the single offset.
  EXPECT_EQ(rc.cls, divisor_of_pl(fx.offsets.offsets[0].f, fx.complex));
}

TEST(RefinedClass, PlaneTwoLines) {
  auto fx = load_fixture("p2-two-lines.json");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode);
  EXPECT_EQ(rc.cls, poly(fx.complex, "Z0^2 + Z0*Z1 + Z0*Z2"));
}

TEST(RefinedClass, F1TwelveTerms) {
  auto fx = load_fixture("f1-blowup.json");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode, forced(fx));
  EXPECT_EQ(rc.cls, poly(fx.complex, kF1Answer));
  EXPECT_EQ(refined_class(fx.complex, fx.offsets, fx.mode).cls, rc.cls);
}

TEST(RefinedClass, F1OffsetsModeDiffers) {
  // The literal offset ideal carries multiplicity along Z1 and differs from
  // the reduced answer.
  auto fx = load_fixture("f1-blowup.json");
  auto rc = refined_class(fx.complex, fx.offsets, IdealMode::Offsets);
  EXPECT_TRUE(rc.cls.is_homogeneous(2));
  EXPECT_FALSE(rc.cls == poly(fx.complex, kF1Answer));
}

TEST(RefinedClass, Counterexample) {
  auto fx = load_fixture("f1-counterexample.json");
  EXPECT_EQ(refined_class(fx.complex, fx.offsets, fx.mode).cls, poly(fx.complex, "Z1^2"));
}

TEST(RefinedClass, EmptyPuncturingLocus) {
  auto c = make_complex({"a", "b"}, {{"a"}, {"b"}});
  PuncturingData pd{{{"p", PLFunction{{{"a", 1}, {"b", 0}}}}, {"q", PLFunction{{{"a", 0}, {"b", 1}}}}}};
  EXPECT_TRUE(puncturing_components(*c, pd).empty());
  EXPECT_TRUE(refined_class(c, pd).cls.is_zero());
}

TEST(Excess, PlaneTwoLines) {
  auto fx = load_fixture("p2-two-lines.json");
  auto ex = refined_class_excess(fx.complex, fx.offsets, *fx.normal_data);
  EXPECT_EQ(ex, poly(fx.complex, "Z0 + Z1 + Z2") * poly(fx.complex, "Z0"));
}

TEST(Excess, Counterexample) {
  auto fx = load_fixture("f1-counterexample.json");
  EXPECT_EQ(refined_class_excess(fx.complex, fx.offsets, {{"Z1"}}), poly(fx.complex, "Z1^2"));
}

TEST(Excess, ZeroExcessIsFundamentalClass) {
  auto fx = load_fixture("pr-hyperplane.json");
  auto ex = refined_class_excess(fx.complex, fx.offsets, {{"ray1"}, {"ray2"}});
  EXPECT_EQ(ex, poly(fx.complex, "ray1 + ray2"));
}

TEST(Excess, InconsistentNormalData) {
  auto fx = load_fixture("p2-two-lines.json");
  EXPECT_THROW(refined_class_excess(fx.complex, fx.offsets, {}), MathError);
  EXPECT_THROW(refined_class_excess(fx.complex, fx.offsets, {{"Z1", "Z2"}}), MathError);
  EXPECT_THROW(refined_class_excess(fx.complex, fx.offsets, {{"Z0"}, {"Z0", "Z1"}}), MathError);
}

TEST(Aluffi, OneDimensionalChart) {
  auto c = make_complex({"a"}, {{"a"}});
  MonomialIdeal ideal{{PLFunction{{{"a", 2}}}, PLFunction{{{"a", 3}}}}};
  EXPECT_EQ(aluffi_chart_segre(c, {"a"}, ideal, 3), poly(c, "2*a - 4*a^2 + 8*a^3"));
}

TEST(Aluffi, OriginOfThePlane) {
  auto c = make_complex({"x", "y"}, {{"x", "y"}});
  MonomialIdeal ideal{{PLFunction{{{"x", 1}, {"y", 0}}}, PLFunction{{{"x", 0}, {"y", 1}}}}};
  // [0] / ((1 + x)(1 + y)) through degree 3.
  EXPECT_EQ(aluffi_chart_segre(c, {"x", "y"}, ideal, 3), poly(c, "x*y - x^2*y - x*y^2"));
  EXPECT_EQ(segre_class(c, ideal, 3), poly(c, "x*y - x^2*y - x*y^2"));
}

TEST(Aluffi, AgreesWithResolutionOnCorpus) {
  for (const char* name : {"pr-hyperplane.json", "p2-two-lines.json", "f1-blowup.json", "f1-counterexample.json"}) {
    auto fx = load_fixture(name);
    auto rep = aluffi_crosscheck(fx.complex, puncturing_ideal(fx.offsets, fx.mode), 3);
    EXPECT_TRUE(rep.ok()) << name;
    EXPECT_FALSE(rep.checked.empty()) << name;
  }
}

TEST(Aluffi, AgreesWithResolutionOnNonReducedIdeals) {
  auto c = make_complex({"x", "y"}, {{"x", "y"}});
  MonomialIdeal ideal{{PLFunction{{{"x", 3}, {"y", 0}}}, PLFunction{{{"x", 1}, {"y", 1}}},
                       PLFunction{{{"x", 0}, {"y", 2}}}}};
  auto rep = aluffi_crosscheck(c, ideal, 4);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checked.size(), 1u);
}
