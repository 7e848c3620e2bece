#include "tropref/chowring.hpp"

#include <algorithm>
#include <sstream>

namespace tropref {

int degree(const Monomial& m) {
  int d = 0;
  for (const auto& [id, e] : m) d += e;
  return d;
}

RaySet support(const Monomial& m) {
  RaySet s;
  s.reserve(m.size());
  for (const auto& [id, e] : m) s.push_back(id);
  return s;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial square_free(const RaySet& s) {
  Monomial m;
  for (const auto& id : make_ray_set(s)) m.emplace_back(id, 1);
  return m;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return a.size() < b.size();
}

void add_term(RawPolynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

ChowClass ChowClass::unit(ComplexPtr c) {
  RawPolynomial p;
  p.emplace(Monomial{}, Rational(1));
  return reduce(p, std::move(c));
}

ChowClass ChowClass::variable(ComplexPtr c, const RayId& id) {
  if (!c->has_ray(id)) throw MathError("unknown ray " + id);
  return of_monomial(std::move(c), Monomial{{id, 1}});
}

ChowClass ChowClass::of_monomial(ComplexPtr c, const Monomial& m, const Rational& coeff) {
  RawPolynomial p;
  add_term(p, m, coeff);
  return reduce(p, std::move(c));
}

int ChowClass::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, degree(m));
  return d;
}

bool ChowClass::is_homogeneous(int d) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return degree(t.first) == d; });
}

Rational ChowClass::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ChowClass::check_compatible(const ChowClass& o) const {
  if (complex_ && o.complex_ && complex_ != o.complex_ &&
      complex_->fingerprint() != o.complex_->fingerprint())
    throw MathError("complex mismatch");
}

ChowClass& ChowClass::operator+=(const ChowClass& o) {
  check_compatible(o);
  if (!complex_) complex_ = o.complex_;
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& o) {
  check_compatible(o);
  if (!complex_) complex_ = o.complex_;
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
  return *this;
}

ChowClass& ChowClass::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

bool ChowClass::operator==(const ChowClass& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

std::string ChowClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit_coeff = a == 1 && !m.empty();
    if (!unit_coeff) out << a.get_str();
    bool first_var = true;
    for (const auto& [id, e] : m) {
      if (!unit_coeff || !first_var) out << "*";
      out << id;
      if (e > 1) out << "^" << e;
      first_var = false;
    }
    first = false;
  }
  return out.str();
}

ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
ChowClass operator*(ChowClass a, const Rational& q) { return a *= q; }
ChowClass operator*(const Rational& q, ChowClass a) { return a *= q; }
ChowClass operator*(const ChowClass& a, const ChowClass& b) { return multiply(a, b); }

ChowClass reduce(const RawPolynomial& p, ComplexPtr c) {
  ChowClass out(c);
  for (const auto& [m, coeff] : p) {
    if (coeff == 0) continue;
    for (const auto& [id, e] : m)
      if (!c->has_ray(id)) throw MathError("monomial uses unknown ray " + id);
    if (c->is_cone(support(m))) add_term(out.terms_, m, coeff);
  }
  return out;
}

ChowClass multiply(const ChowClass& a, const ChowClass& b) {
  ComplexPtr c = a.complex() ? a.complex() : b.complex();
  if (a.complex() && b.complex() && a.complex() != b.complex() &&
      a.complex()->fingerprint() != b.complex()->fingerprint())
    throw MathError("complex mismatch");
  if (!c) return ChowClass();
  RawPolynomial p;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = monomial_product(ma, mb);
      if (c->is_cone(support(m))) add_term(p, m, ca * cb);
    }
  }
  return reduce(p, c);
}

ChowClass divisor_of_pl(const PLFunction& f, const ComplexPtr& c) {
  RawPolynomial p;
  for (const auto& r : c->rays()) add_term(p, Monomial{{r.id, 1}}, Rational(f.at(r.id)));
  return reduce(p, c);
}

ChowClass truncate(const ChowClass& a, int d) {
  RawPolynomial p;
  for (const auto& [m, c] : a.terms())
    if (degree(m) == d) p.emplace(m, c);
  if (!a.complex()) return ChowClass();
  return reduce(p, a.complex());
}

ChowClass truncate_above(const ChowClass& a, int d) {
  RawPolynomial p;
  for (const auto& [m, c] : a.terms())
    if (degree(m) <= d) p.emplace(m, c);
  if (!a.complex()) return ChowClass();
  return reduce(p, a.complex());
}

namespace {

Integer binomial(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Monomial power(const RayId& id, int e) {
  if (e <= 0) return {};
  return Monomial{{id, e}};
}

}  // namespace

ChowClass pullback(const ChowClass& a, const Subdivision& s) {
  const auto& [r1, r2] = s.step.center;
  const RayId& e = s.step.new_ray;
  RawPolynomial p;
  for (const auto& [m, coeff] : a.terms()) {
    int a1 = 0, a2 = 0;
    Monomial rest;
    for (const auto& [id, x] : m) {
      if (id == r1) a1 = x;
      else if (id == r2) a2 = x;
      else rest.emplace_back(id, x);
    }
    // (x1 + e)^a1 (x2 + e)^a2 * rest
    for (int i = 0; i <= a1; ++i) {
      for (int j = 0; j <= a2; ++j) {
        Monomial t = monomial_product(rest, power(r1, a1 - i));
        t = monomial_product(t, power(r2, a2 - j));
        t = monomial_product(t, power(e, i + j));
        add_term(p, t, coeff * Rational(binomial(a1, i) * binomial(a2, j)));
      }
    }
  }
  return reduce(p, s.refined);
}

ChowClass pushforward(const ChowClass& a, const Subdivision& s) {
  const auto& [r1, r2] = s.step.center;
  const RayId& e = s.step.new_ray;
  RawPolynomial p;
  for (const auto& [m, coeff] : a.terms()) {
    int a1 = 0, a2 = 0, j0 = 0;
    Monomial rest;
    for (const auto& [id, x] : m) {
      if (id == r1) a1 = x;
      else if (id == r2) a2 = x;
      else if (id == e) j0 = x;
      else rest.emplace_back(id, x);
    }
    if (j0 == 0 && a1 == 0 && a2 == 0) {
      add_term(p, m, coeff);
      continue;
    }
    // Upstairs x_ri = pi^* x_ri - e; expand in powers of e and push
    // e^J forward: 1, 0, then -h_{J-2}(x1,x2) x1 x2.
    for (int i = 0; i <= a1; ++i) {
      for (int j = 0; j <= a2; ++j) {
        const int big_j = j0 + i + j;
        if (big_j == 1) continue;
        Rational c = coeff * Rational(binomial(a1, i) * binomial(a2, j));
        if ((i + j) % 2) c = -c;
        Monomial base = monomial_product(rest, power(r1, a1 - i));
        base = monomial_product(base, power(r2, a2 - j));
        if (big_j == 0) {
          add_term(p, base, c);
          continue;
        }
        for (int t = 0; t <= big_j - 2; ++t) {
          Monomial term = monomial_product(base, power(r1, t + 1));
          term = monomial_product(term, power(r2, big_j - 2 - t + 1));
          add_term(p, term, -c);
        }
      }
    }
  }
  return reduce(p, s.coarse);
}

ChowClass transport(const ChowClass& a, const ComplexPtr& target) {
  for (const auto& [m, c] : a.terms())
    if (!target->is_cone(support(m)))
      throw MathError("class not supported on target complex");
  return reduce(a.terms(), target);
}

}  // namespace tropref
