#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropref/conecx.hpp"
#include "tropref/rational.hpp"

namespace tropref {

// Sorted by ray id; every exponent is positive.
using Monomial = std::vector<std::pair<RayId, int>>;

int degree(const Monomial& m);
RaySet support(const Monomial& m);
Monomial monomial_product(const Monomial& a, const Monomial& b);
Monomial square_free(const RaySet& s);

// Graded: lower degree first, then lexicographic with larger exponents on
// smaller ids first (x1^2 < x1x2 < x2^2).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using RawPolynomial = std::map<Monomial, Rational, MonomialOrder>;

void add_term(RawPolynomial& p, const Monomial& m, const Rational& c);

// Element of the Stanley-Reisner ring of a simplicial complex. Terms are
// reduced (every monomial is supported on a cone) and nonzero.
class ChowClass {
 public:
  ChowClass() = default;
  explicit ChowClass(ComplexPtr c) : complex_(std::move(c)) {}

  static ChowClass unit(ComplexPtr c);
  static ChowClass variable(ComplexPtr c, const RayId& id);
  static ChowClass of_monomial(ComplexPtr c, const Monomial& m, const Rational& coeff = 1);

  const ComplexPtr& complex() const { return complex_; }
  const RawPolynomial& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const;
  bool is_homogeneous(int d) const;
  Rational coefficient(const Monomial& m) const;

  ChowClass& operator+=(const ChowClass& o);
  ChowClass& operator-=(const ChowClass& o);
  ChowClass& operator*=(const Rational& q);
  bool operator==(const ChowClass& o) const;

  std::string to_string() const;

 private:
  friend ChowClass reduce(const RawPolynomial& p, ComplexPtr c);
  void check_compatible(const ChowClass& o) const;

  ComplexPtr complex_;
  RawPolynomial terms_;
};

ChowClass operator+(ChowClass a, const ChowClass& b);
ChowClass operator-(ChowClass a, const ChowClass& b);
ChowClass operator*(ChowClass a, const Rational& q);
ChowClass operator*(const Rational& q, ChowClass a);
ChowClass operator*(const ChowClass& a, const ChowClass& b);

// Drops monomials whose support is not a cone.
ChowClass reduce(const RawPolynomial& p, ComplexPtr c);
ChowClass multiply(const ChowClass& a, const ChowClass& b);
ChowClass divisor_of_pl(const PLFunction& f, const ComplexPtr& c);
ChowClass truncate(const ChowClass& a, int d);
// Sum of the parts of degree <= d.
ChowClass truncate_above(const ChowClass& a, int d);

ChowClass pullback(const ChowClass& a, const Subdivision& s);
ChowClass pushforward(const ChowClass& a, const Subdivision& s);

// Re-reads the class on another complex; every monomial must be supported.
ChowClass transport(const ChowClass& a, const ComplexPtr& target);

}  // namespace tropref
