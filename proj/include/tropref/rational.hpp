#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropref {

using Rational = mpq_class;
using Integer = mpz_class;
using IntVec = std::vector<long>;

// Always "num/den", including integers ("3/1").
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

long gcd_of(const IntVec& v);
// Divides out the gcd; the zero vector is returned unchanged.
IntVec primitive(const IntVec& v);

// Raised for malformed input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& what)
      : std::runtime_error(what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Raised when an operation's precondition fails on well-formed input.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropref
