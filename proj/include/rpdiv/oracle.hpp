#pragma once

// Brute-force reference implementations. Tests and the CLI `oracle` command
// use them to cross-check the production pipeline; nothing in the pipeline
// calls them. They share only BigInt and IntPoly arithmetic with it.

#include <vector>

#include "rpdiv/bigint.hpp"
#include "rpdiv/lattice.hpp"
#include "rpdiv/poly.hpp"

namespace rpdiv::oracle {

inline constexpr unsigned long kTrialBoundLimit = 1ul << 26;

// { p in [2, bound] : p^r | N } by direct division. bound <= 2^26.
std::vector<BigInt> trial_divisors(const BigInt& n, unsigned long r, const BigInt& bound);

// Integer roots by testing +-d for every divisor d of the trailing nonzero
// coefficient (plus 0 if x | f). That coefficient must be at most 2^52.
std::vector<BigInt> integer_roots_naive(const IntPoly& f);

// Primitive polynomial remainder sequence. Primitive, positive leading
// coefficient; the constant 1 when f and g are coprime.
IntPoly gcd_classical(const IntPoly& f, const IntPoly& g);

// Determinant of the Sylvester matrix (rows of f first), by rational
// elimination. deg f + deg g <= 16, both nonzero.
BigInt resultant_naive(const IntPoly& f, const IntPoly& g);

// Nonzero vector sum c_i b_i of least squared norm over |c_i| <= radius,
// sign-normalised so its first nonzero entry is positive. d <= 5 and at most
// 10^7 coefficient vectors.
IntVector shortest_vector_enum(const IntMatrix& basis, unsigned long radius);

}  // namespace rpdiv::oracle
