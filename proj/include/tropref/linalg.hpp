#pragma once

#include <vector>

#include "tropref/rational.hpp"

namespace tropref::linalg {

using Matrix = std::vector<std::vector<Rational>>;

Matrix from_int(const std::vector<IntVec>& rows);
Matrix transpose(const Matrix& m);
std::size_t rank(Matrix m);
Rational determinant(Matrix m);

// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<std::vector<Rational>> nullspace(const Matrix& m, std::size_t cols);

// Scales a rational vector to the primitive integer vector on its ray.
IntVec primitive_integer(const std::vector<Rational>& v);

// gcd of the maximal minors of the matrix whose columns are `gens`
// (each of length n, with gens.size() <= n). Zero if rank-deficient.
Integer maximal_minor_gcd(const std::vector<IntVec>& gens);

}  // namespace tropref::linalg
