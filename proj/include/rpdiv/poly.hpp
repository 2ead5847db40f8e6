#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "rpdiv/bigint.hpp"

namespace rpdiv {

/// Dense integer polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients; any other polynomial has a
/// nonzero last coefficient. Every constructor and operator maintains this.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  // (a + b x)
  static IntPoly linear(const BigInt& a, const BigInt& b);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  // Coefficient of x^i; zero past the degree.
  BigInt coeff(std::size_t i) const;
  const BigInt& leading() const;

  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const BigInt& scalar);

  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
  friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
  friend IntPoly operator*(IntPoly lhs, const BigInt& s) { return lhs *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly rhs) { return rhs *= s; }
  friend IntPoly operator-(IntPoly p);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Polynomial over Z/MZ with canonical coefficients in [0, M).
class ModPoly {
 public:
  ModPoly(BigInt modulus, std::vector<BigInt> coeffs);

  const BigInt& modulus() const { return modulus_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  friend bool operator==(const ModPoly& a, const ModPoly& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

 private:
  BigInt modulus_;
  std::vector<BigInt> coeffs_;
};

BigInt eval(const IntPoly& f, const BigInt& x);
// Value in [0, M).
BigInt eval(const ModPoly& f, const BigInt& x);

IntPoly derivative(const IntPoly& f);
ModPoly derivative(const ModPoly& f);

BigInt sup_norm(const IntPoly& f);
// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
BigInt content(const IntPoly& f);

struct PrimitiveDecomposition {
  BigInt content;
  IntPoly prim;
};

// content > 0 and content * prim == f. Throws InputError on the zero polynomial.
PrimitiveDecomposition primitive_part(const IntPoly& f);

// Throws InputError if M < 2.
ModPoly reduce_mod(const IntPoly& f, const BigInt& modulus);

// Exact division of every coefficient; InvariantError if any is inexact.
IntPoly divexact(const IntPoly& f, const BigInt& divisor);

// "4,0,-3,1" -> 4 - 3x^2 + x^3. Whitespace around entries is ignored.
// InputError names the offending entry.
IntPoly parse_coefficients(std::string_view text);

// Ascending, comma separated; the inverse of parse_coefficients.
std::string to_coefficient_string(const IntPoly& f);

}  // namespace rpdiv
