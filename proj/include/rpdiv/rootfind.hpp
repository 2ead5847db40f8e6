#pragma once

// Deterministic integer root finding for integer polynomials: a good small
// prime, exhaustive roots modulo that prime, quadratic Hensel lifting, and
// exact reconstruction of the linear factor. Repeated factors are removed
// first with a heuristic GCD whose evaluation point is large enough to be
// always correct.

#include <cstdint>
#include <vector>

#include "rpdiv/bigint.hpp"
#include "rpdiv/poly.hpp"

namespace rpdiv {

struct PrimeSearchResult {
  std::uint64_t p = 0;
  std::uint64_t sieve_bound = 0;  // Y = 6nb + 6n*ceil(lg n)
};

struct GcdTriple {
  IntPoly h;          // primitive, positive leading coefficient
  IntPoly f_cofactor; // f / h
  IntPoly g_cofactor; // g / h
  unsigned long eval_exponent = 0;  // evaluation point 2^c
};

// All primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// The unique v in [0, p^k) with v = u (mod p) and f(v) = 0 (mod p^k).
// f must be given modulo exactly p^k. Throws InputError if f(u) != 0 (mod p),
// f'(u) = 0 (mod p) or u is not in [0, p).
BigInt hensel_lift(const ModPoly& f, const BigInt& u, const BigInt& p, unsigned long k);

// Least prime p <= 6nb + 6n*ceil(lg n) with f mod p nonzero and coprime to its
// derivative. InvariantError if there is none (f was not squarefree).
PrimeSearchResult find_good_prime(const IntPoly& f, unsigned long n, unsigned long b);

// Every u in [0, p) with f(u) = 0 (mod p), by exhaustive evaluation.
std::vector<BigInt> roots_mod_p(const ModPoly& f, const BigInt& p);

// Smallest k with p^k > (n+1)^(1/2) * 2^(n+b+1).
unsigned long hensel_exponent(const BigInt& p, unsigned long n, unsigned long b);

// Representative of x mod m in [-m/2, m/2).
BigInt signed_residue(const BigInt& x, const BigInt& m);
IntPoly signed_lift(const ModPoly& f);

// Integer roots of a squarefree f with deg f = n, ||f|| <= 2^b, b >= n >= 1.
std::vector<BigInt> integer_roots_squarefree(const IntPoly& f, unsigned long n, unsigned long b);

// f(2^c), the concatenation of the coefficients in base 2^c.
BigInt pack_signed(const IntPoly& f, unsigned long c);
// Inverse of pack_signed for coefficients in [-2^(c-1), 2^(c-1)).
// InvariantError if more than max_terms digits appear.
IntPoly unpack_signed(BigInt value, unsigned long c, std::size_t max_terms);

// h = gcd(f, g), normalised primitive with positive leading coefficient, and
// the exact cofactors. Requires deg f, deg g <= n, norms <= 2^b, b >= n >= 1,
// and at least one of f, g primitive (InputError otherwise).
GcdTriple heuristic_gcd(const IntPoly& f, const IntPoly& g, unsigned long n, unsigned long b);

// All integer roots of f, ascending. InputError for the zero polynomial; a
// nonzero constant has none.
std::vector<BigInt> integer_roots(const IntPoly& f);

}  // namespace rpdiv
