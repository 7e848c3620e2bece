#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropref/chowring.hpp"
#include "tropref/puncture.hpp"
#include "tropref/tropmaps.hpp"

namespace tropref {

// Blowup of the stratum cut out by the divisors in J. The new divisor gets
// index 0 and the old divisor j moves to index j + 1.
struct BlowupStep {
  std::vector<int> center;  // sorted old indices
};

enum class LiftCase { Case1, Case2, Untouched };

struct LiftedData {
  NumericalData nd;
  std::vector<LiftCase> cases;
  std::vector<long> multiplicity_before;
  std::vector<long> multiplicity_after;
};

// a_j = a'_j + a'_0 for j in J, a_j = a'_j otherwise.
IntVec lattice_pushforward(const IntVec& lifted, const BlowupStep& step);
NumericalData lattice_pushforward(const NumericalData& lifted, const BlowupStep& step);

// With an override, the given tangencies replace the faithful ones; the
// degrees are still recovered from balancing.
LiftedData faithful_lift(const NumericalData& nd, const std::vector<int>& J,
                         const std::optional<std::vector<IntVec>>& override_markings = std::nullopt);

struct StabilizeResult {
  std::vector<BlowupStep> steps;
  NumericalData nd;
  std::vector<std::vector<long>> multiplicities;  // per step, before it
};

StabilizeResult stabilize_rank(const NumericalData& nd, std::size_t max_steps = 10000);

// A simplicial fan in R^k: rays as primitive vectors, maximal cones as
// index lists.
struct Fan {
  int k = 0;
  std::vector<IntVec> rays;
  std::vector<std::vector<int>> cones;
};

Fan orthant_fan(int k);
// Star subdivision at the sum of the given rays.
Fan star_subdivide(const Fan& fan, const std::vector<int>& center);
// The fan of iterated stratum blowups, read in the original coordinates.
Fan blowup_fan(int k, const std::vector<BlowupStep>& steps);
bool has_ray(const Fan& fan, const IntVec& v);

struct SensitivityReport {
  bool sensitive = true;
  bool complete = true;
  // Per pair J: slopes in the open positive quadrant and the missing ones.
  struct Pair {
    int j1, j2;
    std::vector<IntVec> slopes;
    std::vector<IntVec> missing;
    bool complete = true;
  };
  std::vector<Pair> pairs;
};

NumericalData restrict_data(const NumericalData& nd, const std::vector<int>& J);
TargetModel restrict_model(const TargetModel& tm, const std::vector<int>& J);

SensitivityReport check_slope_sensitivity(const NumericalData& nd, const TargetModel& tm,
                                          const Fan& fan, const EnumerationBounds& bounds = {});

struct ComparisonReport {
  ChowClass coarse;   // refined class on the original complex
  ChowClass primed;   // refined class on the subdivided complex
  ChowClass pushed;   // primed, pushed back down
  ChowClass difference;  // pushed - coarse
  bool equal = false;
  ComplexPtr refined_complex;
};

ComparisonReport compare_under_subdivision(const ComplexPtr& c, const PuncturingData& offsets,
                                           const std::vector<SubdivisionStep>& trace,
                                           const PuncturingData& lifted_offsets,
                                           IdealMode mode = IdealMode::Offsets);

}  // namespace tropref
