#include "tropref/conecx.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "tropref/linalg.hpp"

namespace tropref {

RaySet make_ray_set(std::vector<RayId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

// Subsets of a cone given as a bit pattern over its sorted rays.
RaySet subset(const RaySet& s, std::uint32_t mask) {
  RaySet out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask & (1u << i)) out.push_back(s[i]);
  return out;
}

bool contains(const RaySet& big, const RaySet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

ConeComplex::ConeComplex(std::vector<Ray> rays, std::vector<Cone> cones, ComplexMode mode)
    : rays_(std::move(rays)), cones_(std::move(cones)), mode_(mode) {
  std::stable_sort(rays_.begin(), rays_.end(),
                   [](const Ray& a, const Ray& b) { return a.id < b.id; });
  for (auto& c : cones_) c.rays = make_ray_set(std::move(c.rays));
  std::stable_sort(cones_.begin(), cones_.end(),
                   [](const Cone& a, const Cone& b) { return a.rays < b.rays; });
  for (std::size_t i = 0; i < rays_.size(); ++i) ray_index_.emplace(rays_[i].id, i);
  for (const auto& c : cones_) cone_set_.insert(c.rays);

  std::ostringstream canon;
  canon << (mode_ == ComplexMode::Embedded ? "E" : "A") << "|";
  for (const auto& r : rays_) {
    canon << r.id;
    if (r.primitive)
      for (long x : *r.primitive) canon << ":" << x;
    canon << ";";
  }
  canon << "|";
  for (const auto& c : cones_) {
    for (const auto& id : c.rays) canon << id << ",";
    canon << ";";
  }
  fingerprint_ = fnv1a_hex(canon.str());
}

bool ConeComplex::has_ray(const RayId& id) const { return ray_index_.count(id) > 0; }

const Ray& ConeComplex::ray(const RayId& id) const {
  auto it = ray_index_.find(id);
  if (it == ray_index_.end()) throw MathError("unknown ray " + id);
  return rays_[it->second];
}

bool ConeComplex::is_cone(const RaySet& s) const {
  return s.empty() || cone_set_.count(s) > 0;
}

std::optional<std::string> ConeComplex::label_of(const RaySet& s) const {
  for (const auto& c : cones_)
    if (c.rays == s) return c.label;
  return std::nullopt;
}

std::optional<RaySet> ConeComplex::cone_with_label(const std::string& label) const {
  for (const auto& c : cones_)
    if (c.label && *c.label == label) return c.rays;
  return std::nullopt;
}

std::vector<RaySet> ConeComplex::maximal_cones() const {
  std::vector<RaySet> out;
  for (const auto& c : cones_) {
    bool maximal = true;
    for (const auto& d : cones_) {
      if (d.rays.size() > c.rays.size() && contains(d.rays, c.rays)) {
        maximal = false;
        break;
      }
    }
    if (maximal && std::find(out.begin(), out.end(), c.rays) == out.end())
      out.push_back(c.rays);
  }
  if (out.empty()) out.push_back({});
  return out;
}

std::size_t ConeComplex::dimension() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.rays.size());
  return d;
}

ValidationReport validate_complex(const ConeComplex& c) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::string detail) {
    rep.violations.push_back({std::move(kind), std::move(detail)});
  };
  auto show = [](const RaySet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    return out + "}";
  };

  const auto& rays = c.rays();
  for (std::size_t i = 1; i < rays.size(); ++i)
    if (rays[i].id == rays[i - 1].id) add("duplicate-ray", rays[i].id);

  std::optional<std::size_t> ambient;
  for (const auto& r : rays) {
    if (c.mode() == ComplexMode::Embedded) {
      if (!r.primitive) {
        add("missing-primitive", r.id);
        continue;
      }
      if (ambient && *ambient != r.primitive->size()) add("dimension-mismatch", r.id);
      ambient = r.primitive->size();
      if (gcd_of(*r.primitive) != 1) add("not-primitive", r.id);
    } else if (r.primitive) {
      add("unexpected-primitive", r.id);
    }
  }

  const auto& cones = c.cones();
  for (std::size_t i = 1; i < cones.size(); ++i)
    if (cones[i].rays == cones[i - 1].rays) add("duplicate-cone", show(cones[i].rays));

  std::set<RayId> covered;
  for (const auto& cone : cones) {
    bool known = true;
    for (const auto& id : cone.rays) {
      if (!c.has_ray(id)) {
        add("unknown-ray", id + " in " + show(cone.rays));
        known = false;
      }
      covered.insert(id);
    }
    if (!known) continue;
    if (cone.rays.size() > 20) {
      add("cone-too-large", show(cone.rays));
      continue;
    }
    const std::uint32_t full = (1u << cone.rays.size()) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      RaySet face = subset(cone.rays, mask);
      if (!c.is_cone(face))
        add("not-face-closed", show(face) + " missing, face of " + show(cone.rays));
    }
    if (c.mode() == ComplexMode::Embedded && !cone.rays.empty()) {
      std::vector<IntVec> gens;
      for (const auto& id : cone.rays)
        if (c.ray(id).primitive) gens.push_back(*c.ray(id).primitive);
      if (gens.size() != cone.rays.size()) continue;
      if (linalg::rank(linalg::from_int(gens)) < gens.size()) {
        add("not-linearly-independent", show(cone.rays));
      } else if (linalg::maximal_minor_gcd(gens) != 1) {
        add("not-unimodular", show(cone.rays));
      }
    }
  }
  for (const auto& r : rays)
    if (!covered.count(r.id)) add("orphan-ray", r.id);
  return rep;
}

long PLFunction::at(const RayId& id) const {
  auto it = values.find(id);
  if (it == values.end()) throw MathError("PL function has no value on ray " + id);
  return it->second;
}

bool PLFunction::nonnegative() const {
  return std::all_of(values.begin(), values.end(), [](const auto& kv) { return kv.second >= 0; });
}

PLFunction operator+(const PLFunction& a, const PLFunction& b) {
  PLFunction out = a;
  for (const auto& [id, v] : b.values) out.values[id] += v;
  return out;
}

RayId fresh_ray_id(const ConeComplex& c, const std::string& stem) {
  if (!c.has_ray(stem)) return stem;
  for (int n = 1;; ++n) {
    RayId id = stem + std::to_string(n);
    if (!c.has_ray(id)) return id;
  }
}

Subdivision star_subdivide(const ComplexPtr& c, const RaySet& center_in,
                           std::optional<RayId> new_id) {
  RaySet center = make_ray_set(center_in);
  if (center.size() != 2 || !c->is_cone(center))
    throw MathError("subdivision center is not a 2-ray cone of the complex");
  RayId e = new_id ? *new_id : fresh_ray_id(*c, "E");
  if (c->has_ray(e)) throw MathError("new ray id already in use: " + e);

  std::vector<Ray> rays = c->rays();
  Ray nr{e, std::nullopt};
  if (c->mode() == ComplexMode::Embedded) {
    const auto& a = c->ray(center[0]).primitive;
    const auto& b = c->ray(center[1]).primitive;
    if (a && b && a->size() == b->size()) {
      IntVec sum(a->size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (*a)[i] + (*b)[i];
      nr.primitive = sum;
    }
  }
  rays.push_back(nr);

  std::set<RaySet> seen;
  std::vector<Cone> cones;
  auto push = [&](RaySet s, std::optional<std::string> label) {
    s = make_ray_set(std::move(s));
    if (seen.insert(s).second) cones.push_back({std::move(s), std::move(label)});
  };
  for (const auto& cone : c->cones()) {
    if (!contains(cone.rays, center)) {
      push(cone.rays, cone.label);
      continue;
    }
    const std::uint32_t full = 1u << cone.rays.size();
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      RaySet face = subset(cone.rays, mask);
      if (contains(face, center)) continue;
      face.push_back(e);
      push(std::move(face), std::nullopt);
    }
  }
  auto refined = std::make_shared<const ConeComplex>(std::move(rays), std::move(cones), c->mode());
  return Subdivision{c, refined, SubdivisionStep{{center[0], center[1]}, e}};
}

PLFunction pl_pullback(const PLFunction& f, const SubdivisionStep& step) {
  PLFunction out = f;
  out.values[step.new_ray] = f.at(step.center[0]) + f.at(step.center[1]);
  return out;
}

std::vector<RaySet> vanishing_cones(const ConeComplex& c, const PLFunction& f) {
  std::vector<RaySet> out;
  for (const auto& cone : c.cones()) {
    bool zero = std::all_of(cone.rays.begin(), cone.rays.end(),
                            [&](const RayId& id) { return f.at(id) == 0; });
    if (zero) out.push_back(cone.rays);
  }
  return out;
}

std::vector<Cone> face_closure(const std::vector<Cone>& cones) {
  std::map<RaySet, std::optional<std::string>> all;
  for (const auto& cone : cones) {
    RaySet s = make_ray_set(cone.rays);
    if (s.size() > 20) throw MathError("cone too large for face closure");
    const std::uint32_t full = 1u << s.size();
    for (std::uint32_t mask = 1; mask < full; ++mask) all.emplace(subset(s, mask), std::nullopt);
    if (cone.label) all[s] = cone.label;
  }
  std::vector<Cone> out;
  for (auto& [s, label] : all) out.push_back({s, label});
  return out;
}

}  // namespace tropref
