#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropref/rational.hpp"

namespace tropref {

using RayId = std::string;
// Sorted, duplicate-free list of ray ids.
using RaySet = std::vector<RayId>;

RaySet make_ray_set(std::vector<RayId> ids);

struct Ray {
  RayId id;
  std::optional<IntVec> primitive;
};

struct Cone {
  RaySet rays;
  std::optional<std::string> label;
};

enum class ComplexMode { AbstractSmooth, Embedded };

// Rays and cones are stored in canonical order: rays by id, cones
// lexicographically on their sorted ray lists. The empty cone is implicit.
class ConeComplex {
 public:
  ConeComplex(std::vector<Ray> rays, std::vector<Cone> cones,
              ComplexMode mode = ComplexMode::AbstractSmooth);

  const std::vector<Ray>& rays() const { return rays_; }
  const std::vector<Cone>& cones() const { return cones_; }
  ComplexMode mode() const { return mode_; }

  bool has_ray(const RayId& id) const;
  const Ray& ray(const RayId& id) const;
  bool is_cone(const RaySet& s) const;
  std::optional<std::string> label_of(const RaySet& s) const;
  std::optional<RaySet> cone_with_label(const std::string& label) const;

  // Cones not properly contained in another cone.
  std::vector<RaySet> maximal_cones() const;
  std::size_t dimension() const;

  // Stable identifier of the combinatorial structure.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::vector<Ray> rays_;
  std::vector<Cone> cones_;
  ComplexMode mode_;
  std::map<RayId, std::size_t> ray_index_;
  std::set<RaySet> cone_set_;
  std::string fingerprint_;
};

using ComplexPtr = std::shared_ptr<const ConeComplex>;

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_complex(const ConeComplex& c);

struct PLFunction {
  std::map<RayId, long> values;

  long at(const RayId& id) const;
  bool nonnegative() const;
  bool operator==(const PLFunction&) const = default;
};

PLFunction operator+(const PLFunction& a, const PLFunction& b);

struct SubdivisionStep {
  std::array<RayId, 2> center;
  RayId new_ray;
  bool operator==(const SubdivisionStep&) const = default;
};

// One star subdivision together with both ends.
struct Subdivision {
  ComplexPtr coarse;
  ComplexPtr refined;
  SubdivisionStep step;
};

// Smallest "<stem><n>" not already a ray id (n omitted when stem is free).
RayId fresh_ray_id(const ConeComplex& c, const std::string& stem);

Subdivision star_subdivide(const ComplexPtr& c, const RaySet& center,
                           std::optional<RayId> new_id = std::nullopt);

PLFunction pl_pullback(const PLFunction& f, const SubdivisionStep& step);

// Cones on which every ray value of f is zero.
std::vector<RaySet> vanishing_cones(const ConeComplex& c, const PLFunction& f);

// Adds every face of the listed cones (convenience for hand-built inputs).
std::vector<Cone> face_closure(const std::vector<Cone>& cones);

}  // namespace tropref
