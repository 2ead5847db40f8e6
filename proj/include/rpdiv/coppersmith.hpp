#pragma once

// Lattice search of a single window [P - H, P + H] for every p with p^r | N.

#include <optional>
#include <vector>

#include "rpdiv/bigint.hpp"
#include "rpdiv/lattice.hpp"
#include "rpdiv/poly.hpp"

namespace rpdiv {

struct SearchParams {
  BigInt n;
  unsigned long r = 0;
  unsigned long m = 0;
  unsigned long d = 0;
  BigInt center;     // P
  BigInt half_width; // H
};

// Checks positivity and
//   2^r <= N,   m*r <= d,   H < P,   P^r <= N.
// Throws InputError naming the first violated condition.
void validate_structure(const SearchParams& params);

// The window-size condition, cleared of roots and fractions (exponent 4d):
//   H^(2d(d-1)) * d^(2d) * 2^(d(d-1)) * N^(2rm(m+1)) < (P-H)^(4drm)
bool satisfies_window_bound(const SearchParams& params);

// validate_structure plus satisfies_window_bound.
void validate(const SearchParams& params);

// f_i(x) = N^(m - floor(i/r)) (P + x)^i for i < rm, (P + x)^i for rm <= i < d.
// Built incrementally: multiply by (P + x), divide by N every r steps.
std::vector<IntPoly> build_shift_polynomials(const BigInt& n, unsigned long r, unsigned long m,
                                             unsigned long d, const BigInt& center);

// Row i holds the coefficients of f_i(H y). Lower-triangular by construction.
LatticeBasis build_scaled_basis(const std::vector<IntPoly>& shifts, const BigInt& half_width);

// H^(d(d-1)/2) * N^(rm(m+1)/2)
BigInt scaled_basis_determinant(const SearchParams& params);

// Right-hand side of the coefficient-sum bound raised to the power 4d:
//   d^(2d) * 2^(d(d-1)) * H^(2d(d-1)) * N^(2rm(m+1))
BigInt coefficient_sum_bound_pow4d(const SearchParams& params);

/// Nonzero h of degree < d in the span of the shift polynomials with
///   sum_j |h_j| H^j <= d^(1/2) 2^((d-1)/4) H^((d-1)/2) N^(rm(m+1)/2d).
/// Requires validate_structure(params). Throws InvariantError if the reduced
/// vector is not divisible by the H scaling or the bound fails.
IntPoly find_small_polynomial(const SearchParams& params);

struct WindowReduction {
  IntPoly h;
  IntMatrix reduced_rows;  // scaled, first row is h(H y)
  bool used_exact_fallback = false;
};

// Same, reducing `basis`, which must span the scaled lattice of `params`
// (build_scaled_basis, or shift_scaled_basis of a neighbouring window).
WindowReduction reduce_window(const SearchParams& params, LatticeBasis basis);

// Rows g(y) -> g(y + steps). Maps a basis of the scaled lattice for centre P
// onto a basis of the scaled lattice for centre P + steps * H, so a reduced
// basis of one window seeds the reduction of the next.
IntMatrix shift_scaled_basis(const IntMatrix& rows, long steps);

/// Every p in [P - H, P + H], p >= 2, with p^r | N, ascending.
/// Requires validate(params); throws InputError otherwise.
std::vector<BigInt> search_one_interval(const SearchParams& params);

// Root extraction and filtering for an already computed h.
std::vector<BigInt> divisors_from_polynomial(const SearchParams& params, const IntPoly& h);

}  // namespace rpdiv
