#include "tropref/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tropref::io {

namespace {

std::string at_key(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(at_key(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

std::string string_of(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

long long_of(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long>();
}

IntVec int_vec(const json& j, const std::string& path) {
  IntVec out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(long_of(a[i], at_index(path, i)));
  return out;
}

RaySet ray_list(const json& j, const std::string& path) {
  std::vector<RayId> ids;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) ids.push_back(string_of(a[i], at_index(path, i)));
  RaySet s = make_ray_set(ids);
  if (s.size() != ids.size()) throw InputError(path, "repeated ray id");
  return s;
}

RaySet checked_rays(const json& j, const ComplexPtr& c, const std::string& path) {
  RaySet s = ray_list(j, path);
  for (const auto& id : s)
    if (!c->has_ray(id)) throw InputError(path, "unknown ray '" + id + "'");
  return s;
}

Face face_from(const json& j, int k, const std::string& path) {
  Face f = 0;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long idx = long_of(a[i], at_index(path, i));
    if (idx < 1 || idx > k) throw InputError(at_index(path, i), "divisor index out of range");
    f |= Face(1) << (idx - 1);
  }
  return f;
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("$", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError("$", std::string("invalid JSON: ") + e.what());
  }
}

ComplexPtr parse_complex(const json& j, const std::string& path) {
  std::vector<Ray> rays;
  bool embedded = false;
  const auto& rp = at_key(path, "rays");
  const auto& ra = array(field(j, "rays", path), rp);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    std::string p = at_index(rp, i);
    Ray r;
    if (ra[i].is_string()) {
      r.id = ra[i].get<std::string>();
    } else {
      r.id = string_of(field(ra[i], "id", p), at_key(p, "id"));
      if (const json* prim = optional_field(ra[i], "primitive")) {
        r.primitive = int_vec(*prim, at_key(p, "primitive"));
        embedded = true;
      }
    }
    rays.push_back(std::move(r));
  }
  std::vector<Cone> cones;
  std::map<RaySet, std::string> labels;
  if (const json* lab = optional_field(j, "cone_labels")) {
    std::string lp = at_key(path, "cone_labels");
    if (!lab->is_object()) throw InputError(lp, "expected an object");
    for (const auto& [name, ids] : lab->items()) labels[ray_list(ids, at_key(lp, name))] = name;
  }
  const auto& cp = at_key(path, "cones");
  const auto& ca = array(field(j, "cones", path), cp);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    Cone c{ray_list(ca[i], at_index(cp, i)), std::nullopt};
    if (auto it = labels.find(c.rays); it != labels.end()) c.label = it->second;
    cones.push_back(std::move(c));
  }
  for (const auto& [ids, name] : labels)
    if (std::none_of(cones.begin(), cones.end(), [&](const Cone& c) { return c.rays == ids; }))
      throw InputError(at_key(at_key(path, "cone_labels"), name), "label names a set that is not listed as a cone");
  auto c = std::make_shared<const ConeComplex>(std::move(rays), std::move(cones),
                                               embedded ? ComplexMode::Embedded : ComplexMode::AbstractSmooth);
  return c;
}

PuncturingData parse_offsets(const json& j, const ComplexPtr& c, const std::string& path) {
  PuncturingData pd;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = at_index(path, i);
    Offset o;
    o.puncture = string_of(field(a[i], "puncture", p), at_key(p, "puncture"));
    std::string vp = at_key(p, "values");
    const json& vals = field(a[i], "values", p);
    if (!vals.is_object()) throw InputError(vp, "expected an object");
    for (const auto& r : c->rays()) o.f.values[r.id] = 0;
    for (const auto& [id, v] : vals.items()) {
      if (!c->has_ray(id)) throw InputError(at_key(vp, id), "unknown ray");
      long x = long_of(v, at_key(vp, id));
      if (x < 0) throw InputError(at_key(vp, id), "offset values must be nonnegative");
      o.f.values[id] = x;
    }
    pd.offsets.push_back(std::move(o));
  }
  return pd;
}

NumericalData parse_numerical(const json& j, const std::string& path) {
  NumericalData nd;
  nd.k = static_cast<int>(long_of(field(j, "k", path), at_key(path, "k")));
  if (nd.k < 0 || nd.k > 16) throw InputError(at_key(path, "k"), "k must lie in [0, 16]");
  nd.degrees = int_vec(field(j, "degrees", path), at_key(path, "degrees"));
  if (static_cast<int>(nd.degrees.size()) != nd.k) throw InputError(at_key(path, "degrees"), "expected k entries");
  std::string mp = at_key(path, "markings");
  const auto& ma = array(field(j, "markings", path), mp);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    IntVec a = int_vec(ma[i], at_index(mp, i));
    if (static_cast<int>(a.size()) != nd.k) throw InputError(at_index(mp, i), "expected k entries");
    nd.markings.push_back(std::move(a));
  }
  return nd;
}

TargetModel parse_model(const json& j, int k, const std::string& path) {
  TargetModel tm;
  tm.k = k;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = at_index(path, i);
    Face f = face_from(field(a[i], "face", p), k, at_key(p, "face"));
    auto& slot = tm.strata[f];
    std::string cp = at_key(p, "classes");
    const auto& cls = array(field(a[i], "classes", p), cp);
    for (std::size_t n = 0; n < cls.size(); ++n) {
      VertexClass vc;
      std::string q = at_index(cp, n);
      if (cls[n].is_array()) {
        vc.pairing = int_vec(cls[n], q);
      } else {
        vc.pairing = int_vec(field(cls[n], "pairing", q), at_key(q, "pairing"));
        if (const json* l = optional_field(cls[n], "label")) vc.label = string_of(*l, at_key(q, "label"));
      }
      if (static_cast<int>(vc.pairing.size()) != k) throw InputError(q, "expected k entries");
      slot.push_back(std::move(vc));
    }
  }
  return tm;
}

Fixture parse_fixture(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  Fixture fx;
  if (j.contains("rays") || j.contains("cones")) {
    fx.complex = parse_complex(j, path);
    if (const json* o = optional_field(j, "offsets")) fx.offsets = parse_offsets(*o, fx.complex, at_key(path, "offsets"));
    if (const json* m = optional_field(j, "ideal")) {
      std::string s = string_of(*m, at_key(path, "ideal"));
      if (s == "offsets") fx.mode = IdealMode::Offsets;
      else if (s == "reduced") fx.mode = IdealMode::Reduced;
      else throw InputError(at_key(path, "ideal"), "expected \"offsets\" or \"reduced\"");
    }
    if (const json* n = optional_field(j, "normal_data")) {
      std::string np = at_key(path, "normal_data");
      std::vector<RaySet> nd;
      const auto& a = array(*n, np);
      for (std::size_t i = 0; i < a.size(); ++i) nd.push_back(checked_rays(a[i], fx.complex, at_index(np, i)));
      fx.normal_data = std::move(nd);
    }
    if (const json* f = optional_field(j, "forced_centers")) {
      std::string fp = at_key(path, "forced_centers");
      const auto& a = array(*f, fp);
      for (std::size_t i = 0; i < a.size(); ++i) {
        RaySet s = checked_rays(a[i], fx.complex, at_index(fp, i));
        if (s.size() != 2) throw InputError(at_index(fp, i), "a center has exactly two rays");
        fx.forced_centers.push_back({s[0], s[1]});
      }
    }
  }
  if (const json* n = optional_field(j, "numerical")) {
    std::string np = at_key(path, "numerical");
    fx.numerical = parse_numerical(*n, np);
    if (const json* s = optional_field(*n, "strata")) fx.model = parse_model(*s, fx.numerical->k, at_key(np, "strata"));
    if (fx.model)
      if (const json* ls = optional_field(*n, "leg_shift")) {
        std::string lp = at_key(np, "leg_shift");
        const auto& a = array(*ls, lp);
        for (std::size_t i = 0; i < a.size(); ++i) fx.model->leg_shift.push_back(int_vec(a[i], at_index(lp, i)));
      }
  }
  if (!fx.complex && !fx.numerical) throw InputError(path, "fixture has neither a complex nor numerical data");
  return fx;
}

RootingData parse_rooting(const json& j, const std::string& path) {
  RootingData rd;
  rd.r = int_vec(field(j, "r", path), at_key(path, "r"));
  if (const json* s = optional_field(j, "s")) rd.s = int_vec(*s, at_key(path, "s"));
  return rd;
}

std::vector<SubdivisionStep> parse_trace(const json& j, const std::string& path) {
  std::vector<SubdivisionStep> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = at_index(path, i);
    std::string cp = at_key(p, "center");
    const auto& c = array(field(a[i], "center", p), cp);
    if (c.size() != 2) throw InputError(cp, "a center has exactly two rays");
    SubdivisionStep s;
    s.center = {string_of(c[0], at_index(cp, 0)), string_of(c[1], at_index(cp, 1))};
    s.new_ray = string_of(field(a[i], "new", p), at_key(p, "new"));
    out.push_back(std::move(s));
  }
  return out;
}

Fan parse_fan(const json& j, int k, const std::string& path) {
  Fan f;
  f.k = k;
  std::string rp = at_key(path, "rays");
  const auto& ra = array(field(j, "rays", path), rp);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    IntVec v = int_vec(ra[i], at_index(rp, i));
    if (static_cast<int>(v.size()) != k) throw InputError(at_index(rp, i), "expected k entries");
    f.rays.push_back(primitive(v));
  }
  std::string cp = at_key(path, "cones");
  const auto& ca = array(field(j, "cones", path), cp);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    std::vector<int> cone;
    IntVec idx = int_vec(ca[i], at_index(cp, i));
    for (long x : idx) {
      if (x < 0 || x >= static_cast<long>(f.rays.size())) throw InputError(at_index(cp, i), "ray index out of range");
      cone.push_back(static_cast<int>(x));
    }
    f.cones.push_back(std::move(cone));
  }
  return f;
}

json to_json(const RaySet& s) { return json(s); }

json to_json(const ChowClass& a) {
  // graded lex: total degree first, then the monomials' own order
  std::vector<std::pair<Monomial, Rational>> sorted(a.terms().begin(), a.terms().end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return degree(x.first) < degree(y.first); });
  json terms = json::array();
  for (const auto& [m, c] : sorted) {
    json mono = json::object();
    for (const auto& [id, e] : m) mono[id] = e;
    terms.push_back({{"monomial", mono}, {"coeff", to_string(c)}});
  }
  return {{"terms", terms}, {"text", a.to_string()}};
}

json to_json(const ConeComplex& c) {
  json rays = json::array();
  for (const auto& r : c.rays()) {
    json o{{"id", r.id}};
    if (r.primitive) o["primitive"] = *r.primitive;
    rays.push_back(o);
  }
  json cones = json::array();
  json labels = json::object();
  for (const auto& cone : c.cones()) {
    cones.push_back(cone.rays);
    if (cone.label) labels[*cone.label] = cone.rays;
  }
  json out{{"rays", rays}, {"cones", cones}};
  if (!labels.empty()) out["cone_labels"] = labels;
  return out;
}

json to_json(const PuncturingData& pd) {
  json out = json::array();
  for (const auto& o : pd.offsets) {
    json vals = json::object();
    for (const auto& [id, v] : o.f.values)
      if (v != 0) vals[id] = v;
    out.push_back({{"puncture", o.puncture}, {"values", vals}});
  }
  return out;
}

json to_json(const NumericalData& nd) {
  return {{"k", nd.k}, {"degrees", nd.degrees}, {"markings", nd.markings}};
}

json to_json(const TropicalType& t) {
  json verts = json::array();
  for (const auto& v : t.vertices) {
    std::vector<int> face;
    for (int j : face_indices(v.face)) face.push_back(j + 1);
    verts.push_back({{"face", face}, {"degree", v.degree}, {"label", v.label}});
  }
  json edges = json::array();
  for (const auto& e : t.edges) edges.push_back({{"tail", e.tail}, {"head", e.head}, {"slope", e.slope}});
  return {{"vertices", verts}, {"edges", edges}, {"legs", t.leg_vertex}, {"key", canonical_key(t)}};
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}});
  return {{"ok", r.ok()}, {"violations", v}};
}

json to_json(const SubdivisionStep& s) {
  return {{"center", {s.center[0], s.center[1]}}, {"new", s.new_ray}};
}

}  // namespace tropref::io
