#include "tropref/linalg.hpp"

#include <numeric>

namespace tropref::linalg {

Matrix from_int(const std::vector<IntVec>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> row;
    row.reserve(r.size());
    for (long x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  return rref(m, m[0].size()).size();
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m, std::size_t cols) {
  Matrix a = m;
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVec primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (l / x.get_den());
    g = gcd(g, n);
    ints.push_back(n);
  }
  IntVec out;
  for (auto& n : ints) {
    if (g != 0) n /= g;
    if (!n.fits_slong_p()) throw MathError("coordinate overflow in primitive vector");
    out.push_back(n.get_si());
  }
  return out;
}

Integer maximal_minor_gcd(const std::vector<IntVec>& gens) {
  const std::size_t d = gens.size();
  if (d == 0) return 1;
  const std::size_t n = gens[0].size();
  if (d > n) return 0;
  Integer g = 0;
  std::vector<std::size_t> rows(d);
  std::iota(rows.begin(), rows.end(), 0);
  while (true) {
    Matrix sq(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sq[i][j] = gens[j][rows[i]];
    Rational det = determinant(sq);
    g = gcd(g, Integer(det.get_num()));
    if (g == 1) return g;
    // next combination
    std::size_t i = d;
    while (i > 0 && rows[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t j = i; j < d; ++j) rows[j] = rows[j - 1] + 1;
  }
  return g;
}

}  // namespace tropref::linalg
