#include "tropref/rational.hpp"

#include <numeric>

namespace tropref {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("", "empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("", "not a rational: " + s);
  if (q.get_den() == 0) throw InputError("", "zero denominator: " + s);
  q.canonicalize();
  return q;
}

long gcd_of(const IntVec& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x);
  return g;
}

IntVec primitive(const IntVec& v) {
  long g = gcd_of(v);
  if (g <= 1) return v;
  IntVec out(v);
  for (auto& x : out) x /= g;
  return out;
}

}  // namespace tropref
