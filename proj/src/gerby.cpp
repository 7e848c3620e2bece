#include "tropref/gerby.hpp"

#include <numeric>

namespace tropref {

std::vector<int> contact_directions(const IntVec& alpha) {
  std::vector<int> out;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j] != 0) out.push_back(static_cast<int>(j));
  return out;
}

RootingReport validate_rooting(const NumericalData& nd, const RootingData& rd) {
  RootingReport rep;
  auto where = [](std::size_t i, int j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  if (static_cast<int>(rd.r.size()) != nd.k) {
    rep.violations.push_back("r has " + std::to_string(rd.r.size()) + " entries, k = " + std::to_string(nd.k));
    return rep;
  }
  for (std::size_t j = 0; j < rd.r.size(); ++j)
    if (rd.r[j] < 1) rep.violations.push_back("r_" + std::to_string(j + 1) + " < 1");
  if (!rd.s.empty() && rd.s.size() != nd.markings.size()) {
    rep.violations.push_back("s has the wrong number of entries");
    return rep;
  }
  if (!rep.violations.empty()) return rep;

  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    const auto& a = nd.markings[i];
    long derived = 1;
    for (int j : contact_directions(a)) derived = std::lcm(derived, rd.r[j] / std::gcd(rd.r[j], std::abs(a[j])));
    long s = rd.s.empty() ? derived : rd.s[i];
    rep.s.push_back(s);
    if (s < 1) rep.violations.push_back("s_" + std::to_string(i + 1) + " < 1");
    for (int j : contact_directions(a)) {
      if ((a[j] * s) % rd.r[j] != 0) rep.violations.push_back("divisibility fails at " + where(i, j));
      if (rd.r[j] <= std::abs(a[j])) rep.size_violations.push_back("size fails at " + where(i, j));
    }
    if (s != derived) rep.violations.push_back("coprimality fails at marking " + std::to_string(i + 1));
  }
  return rep;
}

RootingData prime_rooting(const NumericalData& nd) {
  long floor = 1;
  for (const auto& a : nd.markings)
    for (long x : a) floor = std::max(floor, std::abs(x));
  RootingData rd;
  long p = floor + 1;
  auto is_prime = [](long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  while (static_cast<int>(rd.r.size()) < nd.k) {
    if (is_prime(p)) rd.r.push_back(p);
    ++p;
  }
  for (const auto& a : nd.markings) {
    long s = 1;
    for (int j : contact_directions(a)) s *= rd.r[j];
    rd.s.push_back(s);
  }
  return rd;
}

long edge_root(const IntVec& slope, const IntVec& r) {
  long s = 1;
  for (std::size_t j = 0; j < slope.size(); ++j)
    if (slope[j] != 0) s = std::lcm(s, r[j] / std::gcd(r[j], std::abs(slope[j])));
  return s;
}

TwistedType twist_type(const TropicalType& t, const NumericalData& nd, const RootingData& rd) {
  RootingReport rep = validate_rooting(nd, rd);
  if (!rep.ok()) throw MathError("invalid rooting data: " + rep.violations.front());
  TwistedType tt;
  tt.type = t;
  for (const auto& e : t.edges) {
    long s = edge_root(e.slope, rd.r);
    tt.edge_roots.push_back(s);
    std::vector<Rational> m;
    for (int j = 0; j < nd.k; ++j) m.push_back(Rational(e.slope[j] * s, rd.r[j]));
    tt.gerby_slopes.push_back(std::move(m));
  }
  for (const auto& v : t.vertices) {
    std::vector<Rational> d;
    for (int j = 0; j < nd.k; ++j) d.push_back(Rational(v.degree[j], rd.r[j]));
    tt.gerby_degrees.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < nd.markings.size(); ++i) {
    std::vector<Rational> a;
    for (int j = 0; j < nd.k; ++j) a.push_back(Rational(nd.markings[i][j] * rep.s[i], rd.r[j]));
    tt.gerby_tangencies.push_back(std::move(a));
  }
  for (auto& row : tt.gerby_slopes)
    for (auto& q : row) q.canonicalize();
  for (auto& row : tt.gerby_degrees)
    for (auto& q : row) q.canonicalize();
  for (auto& row : tt.gerby_tangencies)
    for (auto& q : row) q.canonicalize();
  return tt;
}

bool gerby_balanced(const TwistedType& tt, const NumericalData& nd, const RootingData& rd) {
  RootingReport rep = validate_rooting(nd, rd);
  const auto& t = tt.type;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    for (int j = 0; j < nd.k; ++j) {
      Rational flow = 0;
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        Rational m = tt.gerby_slopes[e][j] / tt.edge_roots[e];
        if (t.edges[e].tail == static_cast<int>(v)) flow += m;
        if (t.edges[e].head == static_cast<int>(v)) flow -= m;
      }
      for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
        if (t.leg_vertex[i] == static_cast<int>(v)) flow += tt.gerby_tangencies[i][j] / rep.s[i];
      if (flow != tt.gerby_degrees[v][j]) return false;
    }
  }
  return true;
}

TwistedComplex twist_complex(const AssembledComplex& ac, const NumericalData& nd,
                             const RootingData& rd) {
  RootingReport rep = validate_rooting(nd, rd);
  if (!rep.ok()) throw MathError("invalid rooting data: " + rep.violations.front());
  TwistedComplex out;
  out.complex = ac.complex;
  for (const auto& [id, ti] : ac.ray_type) {
    const auto& t = ac.types[ti];
    const auto& cone = ac.cones[ti];
    const IntVec& u = cone.rays.front();
    // Gerby coordinates are coarse ones divided by r_j (root positions)
    // or by s_e (edge lengths).
    Integer den = 1;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto& var = cone.variables[i];
      long scale = var.kind == ConeVariable::RootPosition ? rd.r[var.index]
                                                          : edge_root(t.edges[var.index].slope, rd.r);
      Rational q(u[i], scale);
      q.canonicalize();
      den = lcm(den, Integer(q.get_den()));
      w.push_back(q);
    }
    Integer g = 0;
    for (const auto& q : w) g = gcd(g, Integer(q.get_num() * (den / q.get_den())));
    if (g == 0) g = 1;
    Integer c = den / g;
    if (!c.fits_slong_p()) throw MathError("scaling factor overflow");
    out.scaling[id] = c.get_si();
  }
  for (std::size_t n = 0; n < ac.offsets.offsets.size(); ++n) {
    const auto& o = ac.offsets.offsets[n];
    // the offset's divisor index: the n-th negative entry in marking order
    int count = 0, dir = -1;
    for (std::size_t i = 0; i < nd.markings.size() && dir < 0; ++i)
      for (int j = 0; j < nd.k && dir < 0; ++j)
        if (nd.markings[i][j] < 0 && count++ == static_cast<int>(n)) dir = j;
    Offset g{o.puncture, {}};
    for (const auto& [id, v] : o.f.values) {
      long num = out.scaling.at(id) * v;
      if (num % rd.r[dir] != 0) throw MathError("gerby offset is not integral on ray " + id);
      g.f.values[id] = num / rd.r[dir];
    }
    out.offsets.offsets.push_back(std::move(g));
  }
  return out;
}

ChowClass root_pushforward(const ChowClass& a, const Scaling& scaling, const ComplexPtr& coarse) {
  RawPolynomial p;
  for (const auto& [m, c] : a.terms()) {
    Rational q = c;
    for (const auto& [id, e] : m)
      for (int i = 0; i < e; ++i) q /= scaling.at(id);
    add_term(p, m, q);
  }
  return reduce(p, coarse);
}

ChowClass scaling_pullback(const ChowClass& a, const Scaling& scaling, const ComplexPtr& twisted) {
  RawPolynomial p;
  for (const auto& [m, c] : a.terms()) {
    Rational q = c;
    for (const auto& [id, e] : m)
      for (int i = 0; i < e; ++i) q *= scaling.at(id);
    add_term(p, m, q);
  }
  return reduce(p, twisted);
}

IdentityReport check_pushforward_identity(const NumericalData& nd, const TargetModel& tm,
                                          const RootingData& rd, const EnumerationBounds& bounds,
                                          IdealMode mode) {
  RootingReport rep = validate_rooting(nd, rd);
  if (!rep.ok()) throw MathError("invalid rooting data: " + rep.violations.front());
  EnumerationResult types = enumerate_types(nd, tm, bounds);
  AssembledComplex ac = assemble_complex(types.types, nd);
  TwistedComplex tc = twist_complex(ac, nd, rd);

  IdentityReport out;
  out.complete = types.complete;
  out.rhs = refined_class(ac.complex, ac.offsets, mode).cls;
  ChowClass twisted = refined_class(tc.complex, tc.offsets, mode).cls;
  out.lhs = root_pushforward(twisted, tc.scaling, ac.complex);
  out.factor = 1;
  for (int j = 0; j < nd.k; ++j)
    for (const auto& a : nd.markings)
      if (a[j] < 0) out.factor /= rd.r[j];
  out.equal = out.lhs == out.factor * out.rhs;
  return out;
}

}  // namespace tropref
