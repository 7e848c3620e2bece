#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "helpers.hpp"
#include "tropref/blowups.hpp"
#include "tropref/puncture.hpp"

// Randomized and exhaustive invariant suites. Each returns a description of
// the first failure, or nothing.
namespace property_checks {

using namespace tropref;
using namespace testing_helpers;
using Failure = std::optional<std::string>;

struct RandomStep {
  ComplexPtr c;
  Subdivision s;
};

inline std::optional<RandomStep> random_step(std::mt19937_64& rng) {
  auto c = random_complex(rng, 5, 4, 3);
  auto centers = two_cones(*c);
  if (centers.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
  return RandomStep{c, star_subdivide(c, centers[pick(rng)])};
}

inline std::vector<IntVec> all_vectors(int k, long lo, long hi) {
  std::vector<IntVec> out{{}};
  for (int j = 0; j < k; ++j) {
    std::vector<IntVec> next;
    for (const auto& v : out)
      for (long x = lo; x <= hi; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline Failure pushforward_pullback(int trials, std::uint64_t seed = 101) {
  std::mt19937_64 rng(seed);
  for (int checked = 0; checked < trials;) {
    auto st = random_step(rng);
    if (!st) continue;
    auto a = random_class(rng, st->c, 4, 3);
    if (pushforward(pullback(a, st->s), st->s) != a) return "pi_* pi^* differs on " + a.to_string();
    ++checked;
  }
  return std::nullopt;
}

inline Failure projection_formula(int trials, std::uint64_t seed = 202) {
  std::mt19937_64 rng(seed);
  for (int checked = 0; checked < trials;) {
    auto st = random_step(rng);
    if (!st) continue;
    auto a = random_class(rng, st->c, 3, 2);
    auto b = random_class(rng, st->s.refined, 3, 2);
    if (pushforward(pullback(a, st->s) * b, st->s) != a * pushforward(b, st->s))
      return "projection formula fails for a = " + a.to_string() + ", b = " + b.to_string();
    ++checked;
  }
  return std::nullopt;
}

inline Failure segre_order(int trials, std::uint64_t seed = 303) {
  std::mt19937_64 rng(seed);
  for (int checked = 0; checked < trials; ++checked) {
    auto c = random_complex(rng, 4, 3, 3);
    std::uniform_int_distribution<int> n_gens(1, 3), val(0, 2);
    MonomialIdeal ideal;
    for (int g = n_gens(rng); g > 0; --g) {
      PLFunction f;
      for (const auto& r : c->rays()) f.values[r.id] = val(rng);
      ideal.generators.push_back(f);
    }
    auto base = segre_class(c, ideal, 3);
    for (std::uint64_t s : {7u, 8u}) {
      PrincipalizeOptions o;
      o.seed = s;
      if (segre_class(c, ideal, 3, o) != base) return "segre depends on order at trial " + std::to_string(checked);
    }
  }
  return std::nullopt;
}

inline Failure corpus_homogeneity() {
  int checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    auto name = entry.path().filename().string();
    if (name.find("primed") != std::string::npos) continue;
    auto fx = load_fixture(name);
    if (!fx.complex) continue;
    auto rc = refined_class(fx.complex, fx.offsets, fx.mode);
    int kp = static_cast<int>(fx.offsets.offsets.size());
    if (!rc.cls.is_zero() && !rc.cls.is_homogeneous(kp)) return name + ": " + rc.cls.to_string();
    ++checked;
  }
  if (checked < 4) return "only " + std::to_string(checked) + " fixtures carry a complex";
  return std::nullopt;
}

inline Failure faithful_lift_invariants() {
  int case_two = 0, lifts = 0;
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::vector<int>> centers;
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> J;
      for (int j = 0; j < k; ++j)
        if (mask & (1 << j)) J.push_back(j);
      if (J.size() >= 2) centers.push_back(J);
    }
    for (const auto& alpha : all_vectors(k, -3, 3)) {
      NumericalData nd{k, alpha, {alpha}};
      std::string where = "alpha " + nlohmann::json(alpha).dump();
      for (const auto& J : centers) {
        auto lift = faithful_lift(nd, J);
        ++lifts;
        auto back = lattice_pushforward(lift.nd, BlowupStep{J});
        if (back.markings != nd.markings || back.degrees != nd.degrees) return "roundtrip fails at " + where;
        if (lift.nd.puncturing_rank(0) > nd.puncturing_rank(0)) return "rank grows at " + where;
        if (lift.cases[0] == LiftCase::Case2) {
          ++case_two;
          if (lift.multiplicity_after[0] >= lift.multiplicity_before[0]) return "multiplicity holds at " + where;
        }
      }
      auto st = stabilize_rank(nd);
      if (st.nd.puncturing_rank(0) > 1) return "stabilize leaves rank above one at " + where;
      if (!stabilize_rank(st.nd).steps.empty()) return "stabilize output not fixed at " + where;
    }
  }
  // 7^2 vectors with one center, 7^3 with four
  if (lifts != 49 + 343 * 4) return "exhaustive sweep covered " + std::to_string(lifts) + " lifts";
  if (case_two == 0) return "no Case-2 lift exercised";
  return std::nullopt;
}

}  // namespace property_checks
