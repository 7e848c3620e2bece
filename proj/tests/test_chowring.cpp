#include <gtest/gtest.h>

#include <map>
#include <random>

#include "helpers.hpp"

using namespace tropref;
using namespace testing_helpers;

namespace {

ComplexPtr counterexample_complex() { return make_complex({"Z1", "Z2", "Z3"}, {{"Z1", "Z2"}, {"Z1", "Z3"}}); }
ComplexPtr plane_complex() { return make_complex({"Z0", "Z1", "Z2"}, {{"Z0", "Z1"}, {"Z0", "Z2"}}); }

// Polynomials in named variables, used to evaluate classes at torus fixed
// points.
using Exps = std::map<std::string, int>;
using Poly = std::map<Exps, Rational>;

void add(Poly& p, const Exps& e, const Rational& c) {
  if (c == 0) return;
  auto& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e = ea;
      for (const auto& [v, n] : eb) e[v] += n;
      add(out, e, ca * cb);
    }
  return out;
}

Poly sum(const Poly& a, const Poly& b, const Rational& sb = 1) {
  Poly out = a;
  for (const auto& [e, c] : b) add(out, e, sb * c);
  return out;
}

Poly var(const std::string& v) { return {{{{v, 1}}, Rational(1)}}; }
Poly zero() { return {}; }

// Restricts a class to the chart of `chart` and substitutes the weights.
Poly evaluate(const ChowClass& a, const RaySet& chart, const std::map<RayId, Poly>& w) {
  Poly out;
  for (const auto& [m, c] : a.terms()) {
    bool inside = true;
    for (const auto& [id, e] : m)
      if (!std::binary_search(chart.begin(), chart.end(), id)) inside = false;
    if (!inside) continue;
    Poly t{{Exps{}, c}};
    for (const auto& [id, e] : m)
      for (int i = 0; i < e; ++i) t = mul(t, w.at(id));
    out = sum(out, t);
  }
  return out;
}

// Checks pushforward(a) against localization on every maximal chart
// containing the center: with x_r1 = t1, x_r2 = t2 downstairs,
// (t2 - t1) * pi_*(a) = a|A * t2 - a|B * t1.
::testing::AssertionResult matches_localization(const ChowClass& up, const Subdivision& s) {
  ChowClass down = pushforward(up, s);
  const RayId& r1 = s.step.center[0];
  const RayId& r2 = s.step.center[1];
  const RayId& e = s.step.new_ray;
  for (const auto& chart : s.coarse->maximal_cones()) {
    if (!std::includes(chart.begin(), chart.end(), s.step.center.begin(), s.step.center.end())) continue;
    std::map<RayId, Poly> base;
    for (const auto& id : chart) base[id] = var("u_" + id);
    base[r1] = var("t1");
    base[r2] = var("t2");
    auto chart_a = chart, chart_b = chart;
    chart_a.erase(std::find(chart_a.begin(), chart_a.end(), r1));
    chart_a.push_back(e);
    chart_b.erase(std::find(chart_b.begin(), chart_b.end(), r2));
    chart_b.push_back(e);
    chart_a = make_ray_set(chart_a);
    chart_b = make_ray_set(chart_b);
    auto wa = base, wb = base;
    wa[e] = var("t1");
    wa[r2] = sum(var("t2"), var("t1"), -1);
    wa[r1] = zero();
    wb[e] = var("t2");
    wb[r1] = sum(var("t1"), var("t2"), -1);
    wb[r2] = zero();
    Poly lhs = mul(sum(var("t2"), var("t1"), -1), evaluate(down, chart, base));
    Poly rhs = sum(mul(evaluate(up, chart_a, wa), var("t2")), mul(evaluate(up, chart_b, wb), var("t1")), -1);
    if (lhs != rhs) return ::testing::AssertionFailure() << "chart mismatch for " << up.to_string();
  }
  return ::testing::AssertionSuccess();
}

}  // namespace

TEST(Reduce, NonConeMonomialVanishes) {
  auto c = counterexample_complex();
  EXPECT_TRUE(poly(c, "Z2*Z3").is_zero());
  EXPECT_EQ(poly(c, "Z1*Z3").to_string(), "Z1*Z3");
  auto p = plane_complex();
  EXPECT_EQ(poly(p, "Z0*Z1").to_string(), "Z0*Z1");
  EXPECT_TRUE((poly(p, "2*Z1") - poly(p, "2*Z1")).is_zero());
}

TEST(Reduce, UnknownRayThrows) {
  RawPolynomial raw;
  add_term(raw, Monomial{{"Q", 1}}, 1);
  EXPECT_THROW(reduce(raw, plane_complex()), MathError);
}

TEST(Multiply, RingLaws) {
  auto fx = load_fixture("f1-blowup.json");
  auto c = fx.complex;
  EXPECT_EQ(multiply(poly(c, "Z1"), poly(c, "Z2")), poly(c, "W12"));
  auto p = counterexample_complex();
  auto a = poly(p, "Z1 + Z2");
  EXPECT_EQ(a * a, poly(p, "Z1^2 + 2*Z1*Z2 + Z2^2"));
  EXPECT_EQ(ChowClass::unit(p) * a, a);
  EXPECT_TRUE((poly(p, "Z2") * poly(p, "Z3")).is_zero());
}

TEST(Multiply, MismatchedComplexesThrow) {
  EXPECT_THROW(poly(plane_complex(), "Z1") * poly(counterexample_complex(), "Z1"), MathError);
}

TEST(DivisorOfPL, OffsetsGiveDivisors) {
  auto p = plane_complex();
  EXPECT_EQ(divisor_of_pl(PLFunction{{{"Z0", 1}, {"Z1", 1}, {"Z2", 0}}}, p), poly(p, "Z0 + Z1"));
  EXPECT_TRUE(divisor_of_pl(PLFunction{{{"Z0", 0}, {"Z1", 0}, {"Z2", 0}}}, p).is_zero());
  auto c = counterexample_complex();
  EXPECT_EQ(divisor_of_pl(PLFunction{{{"Z1", 1}, {"Z2", 0}, {"Z3", 0}}}, c), poly(c, "Z1"));
}

TEST(Pullback, CounterexampleStep) {
  auto s = star_subdivide(counterexample_complex(), {"Z1", "Z2"}, "Z0'");
  EXPECT_EQ(pullback(poly(s.coarse, "Z1"), s), poly(s.refined, "Z1 + Z0'"));
  EXPECT_EQ(pullback(poly(s.coarse, "Z3"), s), poly(s.refined, "Z3"));
  ChowClass sq = pullback(poly(s.coarse, "Z1^2"), s);
  EXPECT_EQ(sq, poly(s.refined, "Z1^2 + 2*Z1*Z0' + Z0'^2"));
  EXPECT_EQ(pushforward(sq, s), poly(s.coarse, "Z1^2"));
}

TEST(Pushforward, ExceptionalPowers) {
  auto s = star_subdivide(counterexample_complex(), {"Z1", "Z2"}, "Z0'");
  EXPECT_EQ(pushforward(poly(s.refined, "Z0'^2"), s), poly(s.coarse, "-Z1*Z2"));
  EXPECT_TRUE(pushforward(poly(s.refined, "Z0'"), s).is_zero());
  EXPECT_EQ(pushforward(poly(s.refined, "Z0'^3"), s), poly(s.coarse, "-Z1^2*Z2 - Z1*Z2^2"));
  EXPECT_TRUE(matches_localization(poly(s.refined, "Z0'^3"), s));
}

TEST(Pushforward, StrictTransformSquares) {
  auto s = star_subdivide(counterexample_complex(), {"Z1", "Z2"}, "Z0'");
  EXPECT_TRUE(matches_localization(poly(s.refined, "Z1^2"), s));
  EXPECT_TRUE(matches_localization(poly(s.refined, "Z1^2*Z0' + Z2*Z0'^2"), s));
  EXPECT_TRUE(matches_localization(poly(s.refined, "Z1*Z3 + Z3^2"), s));
}

TEST(Pushforward, AgreesWithLocalizationOnRandomClasses) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_complex(rng, 5, 4, 3);
    auto centers = two_cones(*c);
    if (centers.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
    auto s = star_subdivide(c, centers[pick(rng)]);
    auto up = random_class(rng, s.refined, 6, 4);
    ASSERT_TRUE(matches_localization(up, s));
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Truncate, Grading) {
  auto c = counterexample_complex();
  auto a = poly(c, "1 + Z1 + Z1^2");
  EXPECT_EQ(truncate(a, 2), poly(c, "Z1^2"));
  EXPECT_TRUE(truncate(a, 3).is_zero());
  EXPECT_EQ(truncate_above(a, 1), poly(c, "1 + Z1"));
  EXPECT_TRUE(poly(c, "Z1^2 + Z1*Z2").is_homogeneous(2));
  EXPECT_FALSE(a.is_homogeneous(2));
}

TEST(Transport, RereadsOnAnotherComplex) {
  auto a = poly(plane_complex(), "Z0*Z1");
  auto target = make_complex({"Z0", "Z1", "Z2"}, {{"Z0", "Z1"}});
  EXPECT_EQ(transport(a, target).to_string(), "Z0*Z1");
  EXPECT_THROW(transport(poly(plane_complex(), "Z0*Z2"), target), MathError);
}
