#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropref/chowring.hpp"
#include "tropref/conecx.hpp"

namespace tropref {

struct Offset {
  std::string puncture;
  PLFunction f;
};

struct PuncturingData {
  std::vector<Offset> offsets;
  int k_p() const { return static_cast<int>(offsets.size()); }
};

// How the puncturing ideal is read off the offsets. Offsets: the ideal
// generated by the offset monomials themselves (the zero scheme of the
// section of the offset line bundles). Reduced: exponents clipped to 1,
// i.e. the radical.
enum class IdealMode { Offsets, Reduced };

struct MonomialIdeal {
  std::vector<PLFunction> generators;
};

MonomialIdeal puncturing_ideal(const PuncturingData& pd, IdealMode mode);

std::vector<RaySet> puncturing_components(const ConeComplex& c, const PuncturingData& pd);

struct PrincipalizeOptions {
  // 0 keeps the canonical order; any other value permutes ray and
  // generator priorities.
  std::uint64_t seed = 0;
  // Applied first, in order, each required to be a cone at its turn.
  std::vector<std::array<RayId, 2>> forced_centers;
  std::size_t max_steps = 20000;
};

struct Principalization {
  ComplexPtr refined;
  std::vector<Subdivision> trace;
  // Value on each ray of the pulled back generator that divides all others.
  PLFunction cartier;
};

bool is_principal_on(const RaySet& chart, const std::vector<PLFunction>& gens);

Principalization principalize(const ComplexPtr& c, const MonomialIdeal& ideal,
                              const PrincipalizeOptions& opts = {});

// Pushes a class on the end of a trace back to its start, last step first.
ChowClass push_down(ChowClass a, const std::vector<Subdivision>& trace);
ChowClass pull_up(ChowClass a, const std::vector<Subdivision>& trace);
PLFunction pull_up(PLFunction f, const std::vector<Subdivision>& trace);

ChowClass segre_class(const ComplexPtr& c, const MonomialIdeal& ideal, int max_codim,
                      const PrincipalizeOptions& opts = {});

struct RefinedClassResult {
  ChowClass cls;
  std::vector<SubdivisionStep> trace;
  std::vector<RaySet> components;
};

RefinedClassResult refined_class(const ComplexPtr& c, const PuncturingData& pd,
                                 IdealMode mode = IdealMode::Offsets,
                                 const PrincipalizeOptions& opts = {});

// Excess intersection shortcut: each ray set is one component of V, a
// transverse intersection of divisors with normal bundle the sum of their
// line bundles.
ChowClass refined_class_excess(const ComplexPtr& c, const PuncturingData& pd,
                               const std::vector<RaySet>& normal_data);

// Second Segre backend: Newton-region integral evaluated exactly on one
// chart of dimension <= 2. Returns the class restricted to that chart.
ChowClass aluffi_chart_segre(const ComplexPtr& c, const RaySet& chart,
                             const MonomialIdeal& ideal, int max_codim);

// Keeps the terms supported on faces of `chart`.
ChowClass restrict_to_chart(const ChowClass& a, const RaySet& chart);

struct CrossCheckReport {
  std::vector<RaySet> checked;
  std::vector<RaySet> skipped;
  std::vector<RaySet> mismatched;
  bool ok() const { return mismatched.empty(); }
};

CrossCheckReport aluffi_crosscheck(const ComplexPtr& c, const MonomialIdeal& ideal, int max_codim);

}  // namespace tropref
