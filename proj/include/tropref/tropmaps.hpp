#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tropref/conecx.hpp"
#include "tropref/puncture.hpp"
#include "tropref/rational.hpp"

namespace tropref {

// Subset of the divisor indices {0, ..., k-1} as a bit mask.
using Face = std::uint32_t;

std::vector<int> face_indices(Face f);
Face face_of(const std::vector<int>& indices);
Face support_face(const IntVec& v);

struct NumericalData {
  int k = 0;
  IntVec degrees;
  std::vector<IntVec> markings;

  bool is_puncture(std::size_t i) const;
  int puncturing_rank(std::size_t i) const;
  int total_puncturing_rank() const;
  // Sum of |alpha_ij| over negative entries.
  long puncturing_multiplicity(std::size_t i) const;
};

struct NumericalReport {
  std::vector<std::string> shape_errors;
  std::vector<int> unbalanced;  // divisor indices j with d_j != sum_i alpha_ij
  std::vector<int> ordinary;
  std::vector<int> punctures;
  std::vector<int> ranks;
  int k_p = 0;
  bool ok() const { return shape_errors.empty() && unbalanced.empty(); }
};

NumericalReport validate_numerical_data(const NumericalData& nd);

struct VertexClass {
  IntVec pairing;
  std::string label;
};

struct TargetModel {
  int k = 0;
  std::map<Face, std::vector<VertexClass>> strata;
  // Per marking; a vertex is admissible when its degree plus the shifts of
  // its legs is an admissible class. Empty means no shifts.
  std::vector<IntVec> leg_shift;

  // Admissible classes on a face, zero class first.
  std::vector<VertexClass> classes_on(Face f) const;
};

struct TypeVertex {
  Face face = 0;
  IntVec degree;
  std::string label;
};

struct TypeEdge {
  int tail = 0;
  int head = 0;
  IntVec slope;  // outgoing at the tail
};

struct TropicalType {
  int k = 0;
  std::vector<TypeVertex> vertices;
  std::vector<TypeEdge> edges;
  std::vector<int> leg_vertex;  // marking i is attached to leg_vertex[i]

  Face edge_face(std::size_t e) const;
};

struct Inconsistency {
  int vertex = -1;
  std::string message;
};

// Fills in edge slopes from vertex degrees, legs and tangencies.
std::variant<TropicalType, Inconsistency> slopes_from_balancing(const TropicalType& graph,
                                                                const NumericalData& nd);

// Balancing, face and sign conditions on an already decorated type.
std::optional<Inconsistency> check_type(const TropicalType& t, const NumericalData& nd);

struct ConeVariable {
  enum Kind { RootPosition, EdgeLength } kind;
  int index;  // divisor index or edge index
};

struct TypeCone {
  std::vector<ConeVariable> variables;
  std::size_t dimension = 0;
  std::vector<IntVec> rays;  // primitive generators in variable coordinates
  bool valid = false;        // relative interior realizes the type exactly
  bool simplicial = false;
  bool unimodular = false;
};

TypeCone type_cone(const TropicalType& t);

// Vertex positions at a point of the cone (variable coordinates).
std::vector<IntVec> vertex_positions(const TropicalType& t, const TypeCone& cone, const IntVec& point);

// The type realized at a point of the cone: edges of length zero are
// contracted and faces shrink to the support of the positions.
TropicalType specialize(const TropicalType& t, const TypeCone& cone, const IntVec& point);

std::string canonical_key(const TropicalType& t);
// The isomorphic relabeling whose edge list realizes the key.
TropicalType canonical_form(const TropicalType& t);

struct EnumerationBounds {
  int max_vertices = 0;  // 0: derive from the certificate
  int threads = 1;
};

struct EnumerationResult {
  std::vector<TropicalType> types;  // canonical order
  bool complete = false;
  int vertex_bound = 0;
  std::string note;
};

EnumerationResult enumerate_types(const NumericalData& nd, const TargetModel& tm,
                                  const EnumerationBounds& bounds = {});

struct AssembledComplex {
  ComplexPtr complex;
  PuncturingData offsets;
  std::vector<TropicalType> types;
  std::vector<TypeCone> cones;
  std::map<RaySet, std::size_t> cone_type;
  std::map<RayId, std::size_t> ray_type;
  std::vector<std::string> non_smooth;
};

AssembledComplex assemble_complex(const std::vector<TropicalType>& types, const NumericalData& nd);

NumericalData positivize(const NumericalData& nd);
TargetModel positivize_model(const NumericalData& nd, const TargetModel& tm);
TropicalType positivize_type(const TropicalType& t, const NumericalData& nd);

std::string describe(const TropicalType& t);

}  // namespace tropref
