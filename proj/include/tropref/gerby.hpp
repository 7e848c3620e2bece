#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropref/chowring.hpp"
#include "tropref/puncture.hpp"
#include "tropref/tropmaps.hpp"

namespace tropref {

struct RootingData {
  IntVec r;  // per divisor
  IntVec s;  // per marking; empty means "derive from coprimality"
};

struct RootingReport {
  std::vector<std::string> violations;  // positivity, divisibility, coprimality
  // The size condition is reported apart: the fan-level constructions only
  // need divisibility and coprimality.
  std::vector<std::string> size_violations;
  IntVec s;  // the source roots in use (given or derived)
  bool ok() const { return violations.empty(); }
  bool strict_ok() const { return ok() && size_violations.empty(); }
};

// Indices j with alpha_ij != 0.
std::vector<int> contact_directions(const IntVec& alpha);

RootingReport validate_rooting(const NumericalData& nd, const RootingData& rd);

// r_j = distinct primes larger than every |alpha_ij|, s_i = product over J(i).
RootingData prime_rooting(const NumericalData& nd);

// lcm over the support of r_j / gcd(r_j, m_j); 1 for the zero vector.
long edge_root(const IntVec& slope, const IntVec& r);

struct TwistedType {
  TropicalType type;
  std::vector<long> edge_roots;
  std::vector<std::vector<Rational>> gerby_slopes;
  std::vector<std::vector<Rational>> gerby_degrees;
  std::vector<std::vector<Rational>> gerby_tangencies;
};

TwistedType twist_type(const TropicalType& t, const NumericalData& nd, const RootingData& rd);
bool gerby_balanced(const TwistedType& tt, const NumericalData& nd, const RootingData& rd);

using Scaling = std::map<RayId, long>;

struct TwistedComplex {
  ComplexPtr complex;
  Scaling scaling;
  PuncturingData offsets;
};

TwistedComplex twist_complex(const AssembledComplex& ac, const NumericalData& nd,
                             const RootingData& rd);

// x~_rho -> x_rho / c_rho.
ChowClass root_pushforward(const ChowClass& a, const Scaling& scaling, const ComplexPtr& coarse);
// x_rho -> c_rho x~_rho.
ChowClass scaling_pullback(const ChowClass& a, const Scaling& scaling, const ComplexPtr& twisted);

struct IdentityReport {
  ChowClass lhs;  // pushforward of the refined class of the twisted complex
  ChowClass rhs;  // refined class of the coarse complex
  Rational factor;
  bool equal = false;
  bool complete = false;  // enumeration certified complete
};

IdentityReport check_pushforward_identity(const NumericalData& nd, const TargetModel& tm,
                                          const RootingData& rd, const EnumerationBounds& bounds = {},
                                          IdealMode mode = IdealMode::Offsets);

}  // namespace tropref
