// Newton-region evaluation of Segre classes of monomial schemes on charts of
// dimension at most two. The integral over the complement of the Newton
// polyhedron P is split as (orthant) - (P), and the integral over P is
// summed over the vertex tangent cones of P, each contributing
// |det W| / ((1 + v.X) prod_w (w.X)).

#include <algorithm>
#include <map>
#include <numeric>

#include "tropref/puncture.hpp"

namespace tropref {

namespace {

using Point = std::pair<long, long>;

// Bivariate polynomial: (i, j) -> coefficient of X1^i X2^j.
using Poly2 = std::map<std::pair<int, int>, Rational>;

void add(Poly2& p, std::pair<int, int> e, const Rational& c) {
  if (c == 0) return;
  auto& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

Poly2 mul(const Poly2& a, const Poly2& b, int max_deg) {
  Poly2 out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      if (e.first + e.second <= max_deg) add(out, e, ca * cb);
    }
  return out;
}

// Linear form a X1 + b X2, normalized so the first nonzero entry is positive.
struct Form {
  long a, b;
  auto operator<=>(const Form&) const = default;
};

std::pair<Form, int> normalize(long a, long b) {
  long g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) return {Form{-a, -b}, -g};
  return {Form{a, b}, g};
}

Poly2 form_poly(const Form& f) {
  Poly2 p;
  add(p, {1, 0}, Rational(f.a));
  add(p, {0, 1}, Rational(f.b));
  return p;
}

// 1/(1 + v1 X1 + v2 X2) up to degree n.
Poly2 inverse_series(long v1, long v2, int n) {
  Poly2 lin;
  add(lin, {1, 0}, Rational(-v1));
  add(lin, {0, 1}, Rational(-v2));
  Poly2 out{{{0, 0}, Rational(1)}};
  Poly2 pw = out;
  for (int i = 1; i <= n; ++i) {
    pw = mul(pw, lin, n);
    for (const auto& [e, c] : pw) add(out, e, c);
  }
  return out;
}

// Exact division of the degree-d homogeneous part of p by a linear form.
Poly2 divide_homogeneous(const Poly2& p, int d, const Form& f) {
  std::vector<Rational> h(d + 1);
  for (const auto& [e, c] : p)
    if (e.first + e.second == d) h[e.second] = c;
  Poly2 q;
  if (d == 0) {
    if (h[0] != 0) throw MathError("Newton-region evaluation left a pole");
    return q;
  }
  std::vector<Rational> qs(d);
  if (f.a != 0) {
    for (int i = 0; i < d; ++i) qs[i] = (h[i] - (i ? Rational(f.b) * qs[i - 1] : Rational(0))) / f.a;
    if (h[d] != Rational(f.b) * qs[d - 1]) throw MathError("Newton-region evaluation left a pole");
  } else {
    if (h[0] != 0) throw MathError("Newton-region evaluation left a pole");
    for (int i = 1; i <= d; ++i) qs[i - 1] = h[i] / f.b;
  }
  for (int i = 0; i < d; ++i) add(q, {d - 1 - i, i}, qs[i]);
  return q;
}

// Vertices of conv(points) + R^2_{>=0}, ordered by increasing first coordinate.
std::vector<Point> newton_vertices(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<Point> pareto;
  for (const auto& p : pts)
    if (pareto.empty() || p.second < pareto.back().second) pareto.push_back(p);
  std::vector<Point> hull;
  for (const auto& p : pareto) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      long cross = (a.first - o.first) * (p.second - o.second) -
                   (a.second - o.second) * (p.first - o.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  return hull;
}

}  // namespace

ChowClass aluffi_chart_segre(const ComplexPtr& c, const RaySet& chart_in,
                             const MonomialIdeal& ideal, int max_codim) {
  RaySet chart = make_ray_set(chart_in);
  if (chart.empty() || chart.size() > 2)
    throw MathError("Newton-region backend handles charts of dimension 1 or 2");
  RawPolynomial out;

  if (chart.size() == 1) {
    long m = ideal.generators.front().at(chart[0]);
    for (const auto& g : ideal.generators) m = std::min(m, g.at(chart[0]));
    // mX / (1 + mX)
    Rational pw = 1;
    for (int j = 1; j <= max_codim && m > 0; ++j) {
      pw *= m;
      add_term(out, Monomial{{chart[0], j}}, (j % 2 ? pw : Rational(-pw)));
    }
    return reduce(out, c);
  }

  std::vector<Point> pts;
  for (const auto& g : ideal.generators) pts.emplace_back(g.at(chart[0]), g.at(chart[1]));
  auto verts = newton_vertices(pts);
  if (verts.front() == Point{0, 0}) return ChowClass(c);

  struct Term {
    Point v;
    Rational coeff;
    std::vector<Form> forms;
  };
  std::vector<Term> terms;
  std::vector<Form> all_forms;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& v = verts[i];
    Point w1 = i == 0 ? Point{0, 1}
                      : Point{verts[i - 1].first - v.first, verts[i - 1].second - v.second};
    Point w2 = i + 1 == verts.size()
                   ? Point{1, 0}
                   : Point{verts[i + 1].first - v.first, verts[i + 1].second - v.second};
    long det = std::abs(w1.first * w2.second - w1.second * w2.first);
    auto [f1, s1] = normalize(w1.first, w1.second);
    auto [f2, s2] = normalize(w2.first, w2.second);
    terms.push_back({v, Rational(det) / (s1 * s2), {f1, f2}});
    all_forms.push_back(f1);
    all_forms.push_back(f2);
  }
  std::sort(all_forms.begin(), all_forms.end());
  all_forms.erase(std::unique(all_forms.begin(), all_forms.end()), all_forms.end());

  // X1 X2 * (sum over vertices) * prod(all forms), then divide out the forms.
  const int q = static_cast<int>(all_forms.size());
  const int top = max_codim + q;
  Poly2 numer;
  for (const auto& t : terms) {
    Poly2 piece = inverse_series(t.v.first, t.v.second, top);
    for (const auto& f : all_forms)
      if (std::find(t.forms.begin(), t.forms.end(), f) == t.forms.end())
        piece = mul(piece, form_poly(f), top);
    piece = mul(piece, Poly2{{{1, 1}, t.coeff}}, top);
    for (const auto& [e, cf] : piece) add(numer, e, cf);
  }
  for (int d = 0; d <= max_codim; ++d) {
    Poly2 part;
    for (const auto& [e, cf] : numer)
      if (e.first + e.second == d + q) add(part, e, cf);
    int deg = d + q;
    for (const auto& f : all_forms) part = divide_homogeneous(part, deg--, f);
    // s = 1 - (integral over P)
    for (const auto& [e, cf] : part) {
      Rational coeff = -cf + (d == 0 && e == std::pair<int, int>{0, 0} ? Rational(1) : Rational(0));
      if (coeff == 0) continue;
      Monomial m;
      if (e.first) m.emplace_back(chart[0], e.first);
      if (e.second) m.emplace_back(chart[1], e.second);
      add_term(out, m, coeff);
    }
    if (d == 0 && part.empty()) add_term(out, Monomial{}, Rational(1));
  }
  return reduce(out, c);
}

}  // namespace tropref
