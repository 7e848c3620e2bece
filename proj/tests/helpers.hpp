#pragma once

#include <algorithm>
#include <cctype>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "tropref/chowring.hpp"
#include "tropref/conecx.hpp"
#include "tropref/io.hpp"

namespace tropref {

inline void PrintTo(const ChowClass& c, std::ostream* os) { *os << c.to_string(); }

}  // namespace tropref

namespace testing_helpers {

using namespace tropref;

inline ComplexPtr make_complex(const std::vector<std::string>& rays,
                               const std::vector<std::vector<std::string>>& maximal) {
  std::vector<Ray> rs;
  for (const auto& r : rays) rs.push_back({r, std::nullopt});
  std::vector<Cone> cs;
  for (const auto& m : maximal) cs.push_back({make_ray_set(m), std::nullopt});
  for (const auto& r : rays) cs.push_back({{r}, std::nullopt});
  return std::make_shared<const ConeComplex>(std::move(rs), face_closure(cs));
}

inline io::Fixture load_fixture(const std::string& name) {
  return io::parse_fixture(io::read_file(std::string(FIXTURE_DIR) + "/" + name));
}

// Parses "3*Z1^2 - Z1*Z2 + 1/2*W0": terms of coefficient times factors,
// where a factor is a ray id with optional exponent or a cone label
// (standing for the square-free monomial of that cone).
inline ChowClass poly(const ComplexPtr& c, const std::string& text) {
  RawPolynomial p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto ident = [&] {
    std::size_t s = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
      ++i;
    return text.substr(s, i - s);
  };
  skip();
  if (text.substr(i) == "0") return ChowClass(c);
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (text[i] == '+') ++i;
    else if (text[i] == '-') sign = -1, ++i;
    skip();
    Rational coeff = sign;
    Monomial m;
    while (true) {
      skip();
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::size_t s = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        coeff *= parse_rational(text.substr(s, i - s));
      } else {
        std::string id = ident();
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          std::size_t s = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          e = std::stoi(text.substr(s, i - s));
        }
        Monomial f;
        if (c->has_ray(id)) f = {{id, e}};
        else if (auto cone = c->cone_with_label(id)) f = square_free(*cone);
        else throw std::invalid_argument("unknown factor " + id);
        for (int n = 0; n < (c->has_ray(id) ? 1 : e); ++n) m = monomial_product(m, f);
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    add_term(p, m, coeff);
    skip();
  }
  return reduce(p, c);
}

// Random simplicial complex on rays a, b, c, ... with maximal cones of
// size between 1 and max_dim.
inline ComplexPtr random_complex(std::mt19937_64& rng, int n_rays, int n_cones, int max_dim) {
  std::vector<std::string> rays;
  for (int i = 0; i < n_rays; ++i) rays.push_back(std::string(1, char('a' + i)));
  std::vector<std::vector<std::string>> maximal;
  std::uniform_int_distribution<int> dim(1, max_dim);
  for (int n = 0; n < n_cones; ++n) {
    std::vector<std::string> pool = rays;
    std::shuffle(pool.begin(), pool.end(), rng);
    int d = std::min<int>(dim(rng), n_rays);
    maximal.emplace_back(pool.begin(), pool.begin() + d);
  }
  return make_complex(rays, maximal);
}

inline std::vector<RaySet> two_cones(const ConeComplex& c) {
  std::vector<RaySet> out;
  for (const auto& cone : c.cones())
    if (cone.rays.size() == 2) out.push_back(cone.rays);
  return out;
}

// Random class with monomials supported on cones, degree <= max_deg.
inline ChowClass random_class(std::mt19937_64& rng, const ComplexPtr& c, int n_terms, int max_deg) {
  std::vector<RaySet> cones{{}};
  for (const auto& cone : c->cones()) cones.push_back(cone.rays);
  std::uniform_int_distribution<std::size_t> pick(0, cones.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  RawPolynomial p;
  for (int t = 0; t < n_terms; ++t) {
    const auto& s = cones[pick(rng)];
    int room = max_deg - static_cast<int>(s.size());
    if (room < 0) continue;
    Monomial m = square_free(s);
    std::uniform_int_distribution<int> extra(0, room);
    int ex = extra(rng);
    for (int n = 0; n < ex && !s.empty(); ++n) {
      std::uniform_int_distribution<std::size_t> r(0, s.size() - 1);
      m = monomial_product(m, Monomial{{s[r(rng)], 1}});
    }
    add_term(p, m, Rational(coeff(rng)));
  }
  return reduce(p, c);
}

}  // namespace testing_helpers
