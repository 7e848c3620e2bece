#include "tropref/puncture.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace tropref {

MonomialIdeal puncturing_ideal(const PuncturingData& pd, IdealMode mode) {
  MonomialIdeal ideal;
  for (const auto& o : pd.offsets) {
    PLFunction g = o.f;
    if (mode == IdealMode::Reduced)
      for (auto& [id, v] : g.values) v = std::min(v, 1L);
    ideal.generators.push_back(std::move(g));
  }
  return ideal;
}

std::vector<RaySet> puncturing_components(const ConeComplex& c, const PuncturingData& pd) {
  if (pd.offsets.empty()) return {RaySet{}};
  for (const auto& r : c.rays())
    for (const auto& o : pd.offsets) (void)o.f.at(r.id);

  std::vector<RaySet> hits;
  for (const auto& cone : c.cones()) {
    bool all = std::all_of(pd.offsets.begin(), pd.offsets.end(), [&](const Offset& o) {
      return std::any_of(cone.rays.begin(), cone.rays.end(),
                         [&](const RayId& id) { return o.f.at(id) > 0; });
    });
    if (all) hits.push_back(cone.rays);
  }
  std::vector<RaySet> minimal;
  for (const auto& s : hits) {
    bool has_smaller = std::any_of(hits.begin(), hits.end(), [&](const RaySet& t) {
      return t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end());
    });
    if (!has_smaller) minimal.push_back(s);
  }
  return minimal;
}

bool is_principal_on(const RaySet& chart, const std::vector<PLFunction>& gens) {
  for (const auto& g : gens) {
    bool divides_all = std::all_of(gens.begin(), gens.end(), [&](const PLFunction& h) {
      return std::all_of(chart.begin(), chart.end(),
                         [&](const RayId& id) { return g.at(id) <= h.at(id); });
    });
    if (divides_all) return true;
  }
  return false;
}

namespace {

bool incomparable(const PLFunction& g, const PLFunction& h, const RaySet& chart) {
  bool above = false, below = false;
  for (const auto& id : chart) {
    long d = g.at(id) - h.at(id);
    above = above || d > 0;
    below = below || d < 0;
  }
  return above && below;
}

// Largest gap of g - h on each side with its multiplicity, larger side first.
using Potential = std::array<long, 4>;

Potential potential(const PLFunction& g, const PLFunction& h, const RaySet& chart) {
  std::array<long, 2> top{0, 0}, count{0, 0};
  for (const auto& id : chart) {
    long d = g.at(id) - h.at(id);
    if (d == 0) continue;
    int side = d > 0 ? 0 : 1;
    long m = d > 0 ? d : -d;
    if (m > top[side]) {
      top[side] = m;
      count[side] = 1;
    } else if (m == top[side]) {
      ++count[side];
    }
  }
  std::pair<long, long> a{top[0], count[0]}, b{top[1], count[1]};
  if (a < b) std::swap(a, b);
  return {a.first, a.second, b.first, b.second};
}

// Generator positions and ray priorities, canonical or seeded.
struct Priorities {
  std::vector<std::size_t> gen_order;
  std::map<RayId, std::uint64_t> ray_rank;
  std::mt19937_64 rng;
  std::uint64_t seed;

  Priorities(std::size_t gens, std::uint64_t s) : rng(s), seed(s) {
    gen_order.resize(gens);
    std::iota(gen_order.begin(), gen_order.end(), 0);
    if (seed) std::shuffle(gen_order.begin(), gen_order.end(), rng);
  }

  std::uint64_t rank(const RayId& id) {
    auto it = ray_rank.find(id);
    if (it != ray_rank.end()) return it->second;
    std::uint64_t r = seed ? rng() : 0;
    ray_rank.emplace(id, r);
    return r;
  }

  // Strict preference between two rays; ids break ties.
  bool before(const RayId& a, const RayId& b) {
    auto ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
  }
};

}  // namespace

Principalization principalize(const ComplexPtr& c, const MonomialIdeal& ideal,
                              const PrincipalizeOptions& opts) {
  if (ideal.generators.empty()) throw MathError("monomial ideal has no generators");
  Principalization out;
  ComplexPtr current = c;
  std::vector<PLFunction> gens = ideal.generators;
  for (const auto& g : gens) {
    if (!g.nonnegative()) throw MathError("ideal generator with a negative exponent");
    for (const auto& r : c->rays()) (void)g.at(r.id);
  }

  auto apply = [&](const RaySet& center) {
    Subdivision s = star_subdivide(current, center, fresh_ray_id(*current, "E"));
    for (auto& g : gens) g = pl_pullback(g, s.step);
    current = s.refined;
    out.trace.push_back(std::move(s));
  };

  for (const auto& fc : opts.forced_centers) apply(make_ray_set({fc[0], fc[1]}));

  Priorities prio(gens.size(), opts.seed);
  while (true) {
    std::vector<RaySet> charts = current->maximal_cones();
    if (opts.seed) {
      std::sort(charts.begin(), charts.end(), [&](const RaySet& a, const RaySet& b) {
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (a[i] == b[i]) continue;
          return prio.before(a[i], b[i]);
        }
        return a.size() < b.size();
      });
    }
    // The earliest generator pair that is incomparable on some chart.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t a = 0; a < gens.size() && !pair; ++a) {
      for (std::size_t b = a + 1; b < gens.size() && !pair; ++b) {
        const auto& g = gens[prio.gen_order[a]];
        const auto& h = gens[prio.gen_order[b]];
        for (const auto& ch : charts) {
          if (incomparable(g, h, ch)) {
            pair = {prio.gen_order[a], prio.gen_order[b]};
            break;
          }
        }
      }
    }
    if (!pair) break;
    // Among the charts where the pair is incomparable, the first with the
    // largest potential. Blowing up its extreme rays lowers the potential of
    // every chart at that level and raises none, so the loop terminates.
    const RaySet* chart = nullptr;
    Potential best{};
    for (const auto& ch : charts) {
      if (!incomparable(gens[pair->first], gens[pair->second], ch)) continue;
      Potential p = potential(gens[pair->first], gens[pair->second], ch);
      if (!chart || best < p) {
        chart = &ch;
        best = p;
      }
    }
    if (out.trace.size() >= opts.max_steps + opts.forced_centers.size())
      throw MathError("principalization step budget exceeded");

    const auto& g = gens[pair->first];
    const auto& h = gens[pair->second];
    std::optional<RayId> up, down;
    long best_up = 0, best_down = 0;
    for (const auto& id : *chart) {
      long d = g.at(id) - h.at(id);
      if (d > 0 && (d > best_up || (d == best_up && prio.before(id, *up)))) {
        best_up = d;
        up = id;
      }
      if (d < 0 && (-d > best_down || (-d == best_down && prio.before(id, *down)))) {
        best_down = -d;
        down = id;
      }
    }
    apply(make_ray_set({*up, *down}));
  }

  for (const auto& r : current->rays()) {
    long m = gens.front().at(r.id);
    for (const auto& g : gens) m = std::min(m, g.at(r.id));
    out.cartier.values[r.id] = m;
  }
  out.refined = current;
  return out;
}

ChowClass push_down(ChowClass a, const std::vector<Subdivision>& trace) {
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) a = pushforward(a, *it);
  return a;
}

ChowClass pull_up(ChowClass a, const std::vector<Subdivision>& trace) {
  for (const auto& s : trace) a = pullback(a, s);
  return a;
}

PLFunction pull_up(PLFunction f, const std::vector<Subdivision>& trace) {
  for (const auto& s : trace) f = pl_pullback(f, s.step);
  return f;
}

namespace {

// Sum_{j=1..n} (-1)^{j-1} D^j
ChowClass divisor_segre_series(const ChowClass& d, int n) {
  ChowClass total(d.complex());
  ChowClass power = d;
  for (int j = 1; j <= n; ++j) {
    if (j > 1) power = truncate_above(power * d, n);
    total += (j % 2 ? Rational(1) : Rational(-1)) * power;
  }
  return total;
}

}  // namespace

ChowClass segre_class(const ComplexPtr& c, const MonomialIdeal& ideal, int max_codim,
                      const PrincipalizeOptions& opts) {
  Principalization p = principalize(c, ideal, opts);
  ChowClass d = divisor_of_pl(p.cartier, p.refined);
  return push_down(divisor_segre_series(d, max_codim), p.trace);
}

RefinedClassResult refined_class(const ComplexPtr& c, const PuncturingData& pd, IdealMode mode,
                                 const PrincipalizeOptions& opts) {
  RefinedClassResult res;
  const int k = pd.k_p();
  res.components = puncturing_components(*c, pd);
  if (k == 0) {
    res.cls = ChowClass::unit(c);
    return res;
  }
  if (res.components.empty()) {
    res.cls = ChowClass(c);
    return res;
  }
  for (const auto& o : pd.offsets)
    if (!o.f.nonnegative()) throw MathError("negative puncturing offset for " + o.puncture);

  Principalization p = principalize(c, puncturing_ideal(pd, mode), opts);
  ChowClass chern = ChowClass::unit(p.refined);
  for (const auto& o : pd.offsets) {
    ChowClass factor = ChowClass::unit(p.refined) + divisor_of_pl(pull_up(o.f, p.trace), p.refined);
    chern = truncate_above(chern * factor, k);
  }
  ChowClass d = divisor_of_pl(p.cartier, p.refined);
  ChowClass upstairs = truncate(chern * divisor_segre_series(d, k), k);
  res.cls = push_down(upstairs, p.trace);
  for (const auto& s : p.trace) res.trace.push_back(s.step);
  return res;
}

ChowClass refined_class_excess(const ComplexPtr& c, const PuncturingData& pd,
                               const std::vector<RaySet>& normal_data) {
  const int k = pd.k_p();
  if (normal_data.empty()) throw MathError("inconsistent normal data: no components");
  const std::size_t codim = normal_data.front().size();
  for (const auto& s : normal_data) {
    if (s.size() != codim) throw MathError("inconsistent normal data: codimension mismatch");
    if (!c->is_cone(make_ray_set(s))) throw MathError("inconsistent normal data: not a cone");
  }
  if (static_cast<int>(codim) > k)
    throw MathError("inconsistent normal data: codimension exceeds puncturing rank");
  const int e = k - static_cast<int>(codim);

  ChowClass chern = ChowClass::unit(c);
  for (const auto& o : pd.offsets)
    chern = truncate_above(chern * (ChowClass::unit(c) + divisor_of_pl(o.f, c)), e);

  ChowClass total(c);
  for (const auto& raw : normal_data) {
    RaySet s = make_ray_set(raw);
    ChowClass quotient = chern;
    for (const auto& id : s) {
      // multiply by (1 + x)^{-1}
      ChowClass inv = ChowClass::unit(c);
      ChowClass x = ChowClass::variable(c, id);
      ChowClass pw = ChowClass::unit(c);
      for (int i = 1; i <= e; ++i) {
        pw = pw * x;
        inv += (i % 2 ? Rational(-1) : Rational(1)) * pw;
      }
      quotient = truncate_above(quotient * inv, e);
    }
    total += truncate(quotient, e) * ChowClass::of_monomial(c, square_free(s));
  }
  return total;
}

ChowClass restrict_to_chart(const ChowClass& a, const RaySet& chart) {
  RawPolynomial p;
  for (const auto& [m, coeff] : a.terms()) {
    RaySet s = support(m);
    if (std::includes(chart.begin(), chart.end(), s.begin(), s.end())) p.emplace(m, coeff);
  }
  return reduce(p, a.complex());
}

CrossCheckReport aluffi_crosscheck(const ComplexPtr& c, const MonomialIdeal& ideal, int max_codim) {
  CrossCheckReport rep;
  ChowClass s = segre_class(c, ideal, max_codim);
  for (const auto& chart : c->maximal_cones()) {
    if (chart.size() > 2 || chart.empty()) {
      rep.skipped.push_back(chart);
      continue;
    }
    rep.checked.push_back(chart);
    if (!(restrict_to_chart(s, chart) == aluffi_chart_segre(c, chart, ideal, max_codim)))
      rep.mismatched.push_back(chart);
  }
  return rep;
}

}  // namespace tropref
