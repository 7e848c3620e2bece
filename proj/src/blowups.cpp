#include "tropref/blowups.hpp"

#include <algorithm>
#include <set>

#include "tropref/linalg.hpp"

namespace tropref {

namespace {

bool in_center(const BlowupStep& s, int j) {
  return std::binary_search(s.center.begin(), s.center.end(), j);
}

long multiplicity(const IntVec& a) {
  long m = 0;
  for (long x : a)
    if (x < 0) m -= x;
  return m;
}

}  // namespace

IntVec lattice_pushforward(const IntVec& lifted, const BlowupStep& step) {
  IntVec out(lifted.size() - 1);
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = lifted[j + 1] + (in_center(step, static_cast<int>(j)) ? lifted[0] : 0);
  return out;
}

NumericalData lattice_pushforward(const NumericalData& lifted, const BlowupStep& step) {
  NumericalData out;
  out.k = lifted.k - 1;
  out.degrees = lattice_pushforward(lifted.degrees, step);
  for (const auto& a : lifted.markings) out.markings.push_back(lattice_pushforward(a, step));
  return out;
}

LiftedData faithful_lift(const NumericalData& nd, const std::vector<int>& J_in,
                         const std::optional<std::vector<IntVec>>& override_markings) {
  BlowupStep step{J_in};
  std::sort(step.center.begin(), step.center.end());
  step.center.erase(std::unique(step.center.begin(), step.center.end()), step.center.end());
  if (step.center.empty()) throw MathError("blowup center is empty");
  for (int j : step.center)
    if (j < 0 || j >= nd.k) throw MathError("blowup center index out of range");

  LiftedData out;
  out.nd.k = nd.k + 1;
  for (const auto& a : nd.markings) {
    long chosen;
    bool case1 = std::any_of(step.center.begin(), step.center.end(), [&](int j) { return a[j] >= 0; });
    if (case1) {
      chosen = -1;
      for (int j : step.center)
        if (a[j] >= 0 && (chosen < 0 || a[j] < chosen)) chosen = a[j];
    } else {
      chosen = a[step.center.front()];
      for (int j : step.center) chosen = std::max(chosen, a[j]);
    }
    IntVec lifted{chosen};
    for (int j = 0; j < nd.k; ++j) lifted.push_back(a[j] - (in_center(step, j) ? chosen : 0));
    out.cases.push_back(case1 ? LiftCase::Case1 : LiftCase::Case2);
    out.multiplicity_before.push_back(multiplicity(a));
    out.nd.markings.push_back(std::move(lifted));
  }
  if (override_markings) {
    if (override_markings->size() != nd.markings.size())
      throw MathError("override has the wrong number of markings");
    out.nd.markings = *override_markings;
    for (const auto& a : out.nd.markings)
      if (static_cast<int>(a.size()) != out.nd.k) throw MathError("override has the wrong length");
  }
  long d0 = 0;
  for (const auto& a : out.nd.markings) d0 += a[0];
  out.nd.degrees.push_back(d0);
  for (int j = 0; j < nd.k; ++j) out.nd.degrees.push_back(nd.degrees[j] - (in_center(step, j) ? d0 : 0));
  for (const auto& a : out.nd.markings) out.multiplicity_after.push_back(multiplicity(a));

  NumericalData back = lattice_pushforward(out.nd, step);
  if (back.degrees != nd.degrees || back.markings != nd.markings)
    throw MathError("lifted data does not push forward to the input");
  return out;
}

StabilizeResult stabilize_rank(const NumericalData& nd, std::size_t max_steps) {
  StabilizeResult out;
  out.nd = nd;
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < out.nd.markings.size() && !pick; ++i)
      if (out.nd.puncturing_rank(i) >= 2) pick = i;
    if (!pick) break;
    if (out.steps.size() >= max_steps) throw MathError("rank stabilization exceeded its step budget");
    std::vector<int> J;
    for (int j = 0; j < out.nd.k; ++j)
      if (out.nd.markings[*pick][j] < 0) J.push_back(j);
    std::vector<long> mult;
    for (const auto& a : out.nd.markings) mult.push_back(multiplicity(a));
    out.multiplicities.push_back(std::move(mult));
    out.nd = faithful_lift(out.nd, J).nd;
    out.steps.push_back(BlowupStep{J});
  }
  return out;
}

Fan orthant_fan(int k) {
  Fan f;
  f.k = k;
  std::vector<int> all;
  for (int j = 0; j < k; ++j) {
    IntVec e(k, 0);
    e[j] = 1;
    f.rays.push_back(e);
    all.push_back(j);
  }
  f.cones.push_back(all);
  return f;
}

Fan star_subdivide(const Fan& fan, const std::vector<int>& center_in) {
  std::vector<int> center = center_in;
  std::sort(center.begin(), center.end());
  if (center.empty()) throw MathError("star subdivision center is empty");
  IntVec v(fan.k, 0);
  for (int r : center)
    for (int j = 0; j < fan.k; ++j) v[j] += fan.rays.at(r)[j];
  Fan out = fan;
  int nv = static_cast<int>(out.rays.size());
  out.rays.push_back(primitive(v));
  out.cones.clear();
  bool found = false;
  for (const auto& c : fan.cones) {
    std::vector<int> sc = c;
    std::sort(sc.begin(), sc.end());
    if (!std::includes(sc.begin(), sc.end(), center.begin(), center.end())) {
      out.cones.push_back(c);
      continue;
    }
    found = true;
    for (int drop : center) {
      std::vector<int> nc;
      for (int r : sc)
        if (r != drop) nc.push_back(r);
      nc.push_back(nv);
      out.cones.push_back(nc);
    }
  }
  if (!found) throw MathError("star subdivision center is not a cone");
  return out;
}

Fan blowup_fan(int k, const std::vector<BlowupStep>& steps) {
  Fan f = orthant_fan(k);
  // Divisor index -> ray index, updated as new divisors are prepended.
  std::vector<int> divisor_ray;
  for (int j = 0; j < k; ++j) divisor_ray.push_back(j);
  for (const auto& s : steps) {
    std::vector<int> center;
    for (int j : s.center) center.push_back(divisor_ray.at(j));
    f = star_subdivide(f, center);
    divisor_ray.insert(divisor_ray.begin(), static_cast<int>(f.rays.size()) - 1);
  }
  return f;
}

bool has_ray(const Fan& fan, const IntVec& v) {
  IntVec p = primitive(v);
  return std::find(fan.rays.begin(), fan.rays.end(), p) != fan.rays.end();
}

NumericalData restrict_data(const NumericalData& nd, const std::vector<int>& J) {
  NumericalData out;
  out.k = static_cast<int>(J.size());
  for (int j : J) out.degrees.push_back(nd.degrees[j]);
  for (const auto& a : nd.markings) {
    IntVec b;
    for (int j : J) b.push_back(a[j]);
    out.markings.push_back(std::move(b));
  }
  return out;
}

TargetModel restrict_model(const TargetModel& tm, const std::vector<int>& J) {
  TargetModel out;
  out.k = static_cast<int>(J.size());
  for (const auto& [face, classes] : tm.strata) {
    Face g = 0;
    for (std::size_t n = 0; n < J.size(); ++n)
      if (face & (Face(1) << J[n])) g |= Face(1) << n;
    auto& slot = out.strata[g];
    for (const auto& c : classes) {
      VertexClass r;
      for (int j : J) r.pairing.push_back(c.pairing[j]);
      r.label = c.label;
      bool dup = std::any_of(slot.begin(), slot.end(), [&](const VertexClass& x) { return x.pairing == r.pairing; });
      if (!dup) slot.push_back(std::move(r));
    }
  }
  for (const auto& s : tm.leg_shift) {
    IntVec b;
    for (int j : J) b.push_back(s[j]);
    out.leg_shift.push_back(std::move(b));
  }
  return out;
}

SensitivityReport check_slope_sensitivity(const NumericalData& nd, const TargetModel& tm,
                                          const Fan& fan, const EnumerationBounds& bounds) {
  if (fan.k != nd.k) throw MathError("fan dimension does not match the number of divisors");
  SensitivityReport rep;
  for (int j1 = 0; j1 < nd.k; ++j1)
    for (int j2 = j1 + 1; j2 < nd.k; ++j2) {
      SensitivityReport::Pair pair{j1, j2, {}, {}, true};
      std::vector<int> J{j1, j2};
      EnumerationResult er = enumerate_types(restrict_data(nd, J), restrict_model(tm, J), bounds);
      pair.complete = er.complete;
      std::set<IntVec> slopes;
      for (const auto& t : er.types)
        for (const auto& e : t.edges) {
          long a = e.slope[0], b = e.slope[1];
          if (a < 0 && b < 0) a = -a, b = -b;
          if (a > 0 && b > 0) slopes.insert(primitive(IntVec{a, b}));
        }
      for (const auto& s : slopes) {
        pair.slopes.push_back(s);
        IntVec v(nd.k, 0);
        v[j1] = s[0];
        v[j2] = s[1];
        if (!has_ray(fan, v)) pair.missing.push_back(s);
      }
      if (!pair.missing.empty()) rep.sensitive = false;
      if (!pair.complete) rep.complete = false;
      rep.pairs.push_back(std::move(pair));
    }
  return rep;
}

ComparisonReport compare_under_subdivision(const ComplexPtr& c, const PuncturingData& offsets,
                                           const std::vector<SubdivisionStep>& trace,
                                           const PuncturingData& lifted_offsets, IdealMode mode) {
  ComparisonReport out;
  std::vector<Subdivision> steps;
  ComplexPtr cur = c;
  for (const auto& s : trace) {
    steps.push_back(star_subdivide(cur, make_ray_set({s.center[0], s.center[1]}), s.new_ray));
    cur = steps.back().refined;
  }
  out.refined_complex = cur;
  out.coarse = refined_class(c, offsets, mode).cls;
  out.primed = refined_class(cur, lifted_offsets, mode).cls;
  out.pushed = push_down(out.primed, steps);
  out.difference = out.pushed - out.coarse;
  out.equal = out.difference.is_zero();
  return out;
}

}  // namespace tropref
