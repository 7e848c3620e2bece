// One line per acceptance criterion: PASS/FAIL, wall time, detail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "property_checks.hpp"
#include "tropref/gerby.hpp"
#include "tropref/tropmaps.hpp"

using namespace tropref;
using namespace testing_helpers;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Criterion = std::function<void(Check&)>;

const char* kF1Answer = "3*Z1^2 + Z2^2 + 4*W12 + W0 + 3*W1 + W2 + 3*W3 + W4 + 3*W5 + W6 + 3*W7 + W8";

PrincipalizeOptions forced(const io::Fixture& fx) {
  PrincipalizeOptions o;
  o.forced_centers = fx.forced_centers;
  return o;
}

void plane_two_lines(Check& ck) {
  auto fx = load_fixture("p2-two-lines.json");
  auto want = poly(fx.complex, "Z0^2 + Z0*Z1 + Z0*Z2");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode);
  ck.expect(rc.cls == want, "general formula gives " + rc.cls.to_string());
  auto ex = refined_class_excess(fx.complex, fx.offsets, *fx.normal_data);
  ck.expect(ex == want, "excess shortcut gives " + ex.to_string());
}

void hyperplane(Check& ck) {
  auto fx = load_fixture("pr-hyperplane.json");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode);
  ck.expect(rc.cls == poly(fx.complex, "ray1 + ray2"), "refined class " + rc.cls.to_string());
  ck.expect(rc.cls == divisor_of_pl(fx.offsets.offsets[0].f, fx.complex), "differs from the standard class");
}

void f1_blowup(Check& ck) {
  auto fx = load_fixture("f1-blowup.json");
  auto rc = refined_class(fx.complex, fx.offsets, fx.mode, forced(fx));
  ck.expect(rc.cls == poly(fx.complex, kF1Answer), "refined class " + rc.cls.to_string());
  auto s = segre_class(fx.complex, puncturing_ideal(fx.offsets, fx.mode), 2, forced(fx));
  ck.expect(truncate(s, 1) == poly(fx.complex, "Z1 + Z2"), "Segre part 1 " + truncate(s, 1).to_string());
  ck.expect(truncate(s, 2) == poly(fx.complex, "-Z1^2 - Z2^2 - 2*W12 + W0"),
            "Segre part 2 " + truncate(s, 2).to_string());
}

void counterexample(Check& ck) {
  auto fx = load_fixture("f1-counterexample.json");
  PuncturingData lifted = fx.offsets;
  for (auto& o : lifted.offsets) o.f.values["Z0'"] = 0;
  auto rep = compare_under_subdivision(fx.complex, fx.offsets, {{{"Z1", "Z2"}, "Z0'"}}, lifted, fx.mode);
  ck.expect(rep.coarse == poly(fx.complex, "Z1^2"), "coarse " + rep.coarse.to_string());
  ck.expect(rep.pushed == poly(fx.complex, "Z1^2 - Z1*Z2"), "pushed " + rep.pushed.to_string());
  ck.expect(!rep.equal, "classes agree");
}

void gerby(Check& ck) {
  auto pr = load_fixture("pr-hyperplane.json");
  for (long r : {2L, 3L, 5L, 7L}) {
    auto rep = check_pushforward_identity(*pr.numerical, *pr.model, {{r}, {}});
    ck.expect(rep.equal && rep.factor == Rational(1, r), "hyperplane r = " + std::to_string(r));
  }
  auto p2 = load_fixture("p2-two-lines.json");
  auto rep = check_pushforward_identity(*p2.numerical, *p2.model, {{5, 7}, {}});
  ck.expect(rep.equal && rep.factor == Rational(1, 35), "plane r = (5,7)");
}

void properties(Check& ck) {
  using namespace property_checks;
  for (auto f : {pushforward_pullback(1000), segre_order(100), corpus_homogeneity(), projection_formula(300),
                 faithful_lift_invariants()})
    ck.expect(!f, f.value_or(""));
}

void enumerator(Check& ck) {
  auto fx = load_fixture("p2-two-lines-numerical.json");
  auto er = enumerate_types(*fx.numerical, *fx.model);
  ck.expect(er.complete && er.types.size() == 6, "found " + std::to_string(er.types.size()) + " types");
  auto ac = assemble_complex(er.types, *fx.numerical);
  auto rc = refined_class(ac.complex, ac.offsets);
  // Identify Z0 as the ray shared by both 2-cones, Z1 and Z2 as the others.
  RayId z0;
  std::vector<RayId> others;
  for (const auto& r : ac.complex->rays()) {
    int n = 0;
    for (const auto& m : ac.complex->maximal_cones()) n += std::count(m.begin(), m.end(), r.id);
    if (n == 2) z0 = r.id;
    else others.push_back(r.id);
  }
  ck.expect(!z0.empty() && others.size() == 2, "assembled complex has the wrong shape");
  if (!ck.ok) return;
  auto want = poly(ac.complex, z0 + "^2 + " + z0 + "*" + others[0] + " + " + z0 + "*" + others[1]);
  ck.expect(rc.cls == want, "assembled class " + rc.cls.to_string());
}

void positivisation(Check& ck) {
  auto pos = positivize({1, {1}, {{4}, {-1}, {-2}}});
  ck.expect(pos.degrees == IntVec{4} && pos.markings == std::vector<IntVec>{{4}, {0}, {0}}, "wrong positivised datum");
  for (const char* name : {"pr-hyperplane.json", "p2-two-lines.json", "f1-counterexample.json",
                           "positivize-rank-one.json", "p2-two-lines-numerical.json"}) {
    auto fx = load_fixture(name);
    auto a = enumerate_types(*fx.numerical, *fx.model);
    auto b = enumerate_types(positivize(*fx.numerical), positivize_model(*fx.numerical, *fx.model));
    ck.expect(a.types.size() == b.types.size(), std::string("type counts differ on ") + name);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"plane with two lines", plane_two_lines}, {"rank-one hyperplane", hyperplane},
      {"F1 blowup", f1_blowup},                  {"subdivision counterexample", counterexample},
      {"gerby identity", gerby},                 {"property suites", properties},
      {"type enumerator", enumerator},           {"positivisation", positivisation},
  };
  const double limits[] = {1.0, 0, 10.0, 0, 0, 0, 0, 0};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0 && secs >= limits[i]) ck.expect(false, "over the time limit");
    if (!ck.ok) ++failures;
    std::printf("%s criterion %zu (%s) %.2f ms%s%s\n", ck.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs * 1e3,
                ck.ok ? "" : ": ", ck.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
