#include "rpdiv/coppersmith.hpp"

#include <string>
#include <utility>

#include "rpdiv/errors.hpp"
#include "rpdiv/rootfind.hpp"

namespace rpdiv {

void validate_structure(const SearchParams& p) {
  if (p.n < 2) throw InputError("N must be at least 2");
  if (p.r < 1 || p.m < 1 || p.d < 1) throw InputError("r, m and d must be positive");
  if (p.half_width < 1) throw InputError("H must be at least 1");
  if (pow2(p.r) > p.n) throw InputError("r exceeds lg N (2^r > N)");
  if (p.m * p.r > p.d) throw InputError("m*r exceeds d");
  if (p.half_width >= p.center) throw InputError("H must be smaller than P");
  if (pow(p.center, p.r) > p.n) throw InputError("P exceeds N^(1/r)");
}

bool satisfies_window_bound(const SearchParams& p) {
  const unsigned long d = p.d;
  const unsigned long rm = p.r * p.m;
  const BigInt lhs = pow(p.half_width, 2 * d * (d - 1)) * pow(BigInt(d), 2 * d) * pow2(d * (d - 1)) *
                     pow(p.n, 2 * rm * (p.m + 1));
  const BigInt rhs = pow(p.center - p.half_width, 4 * d * rm);
  return lhs < rhs;
}

void validate(const SearchParams& params) {
  validate_structure(params);
  if (!satisfies_window_bound(params)) throw InputError("H too large for the window-size condition");
}

std::vector<IntPoly> build_shift_polynomials(const BigInt& n, unsigned long r, unsigned long m,
                                             unsigned long d, const BigInt& center) {
  if (n < 2 || r < 1 || m < 1 || d < 1 || m * r > d) {
    throw InputError("build_shift_polynomials: need N >= 2, r, m, d >= 1 and m*r <= d");
  }
  std::vector<IntPoly> out;
  out.reserve(d);
  IntPoly current = IntPoly::constant(pow(n, m));
  const IntPoly step = IntPoly::linear(center, 1);
  for (unsigned long i = 0; i < d; ++i) {
    if (i > 0) {
      current = current * step;
      if (i % r == 0 && i <= r * m) current = divexact(current, n);
    }
    out.push_back(current);
  }
  return out;
}

LatticeBasis build_scaled_basis(const std::vector<IntPoly>& shifts, const BigInt& half_width) {
  const std::size_t d = shifts.size();
  IntMatrix rows(d, IntVector(d, BigInt(0)));
  std::vector<BigInt> scale(d);
  scale.front() = 1;
  for (std::size_t j = 1; j < d; ++j) scale[j] = scale[j - 1] * half_width;
  for (std::size_t i = 0; i < d; ++i) {
    if (shifts[i].degree() != static_cast<int>(i)) {
      throw InvariantError("shift polynomial " + std::to_string(i) + " has the wrong degree");
    }
    for (std::size_t j = 0; j <= i; ++j) rows[i][j] = shifts[i].coeffs()[j] * scale[j];
  }
  LatticeBasis basis(std::move(rows));
  if (sgn(basis.triangular_determinant()) == 0) throw InvariantError("singular scaled basis");
  return basis;
}

BigInt scaled_basis_determinant(const SearchParams& p) {
  return pow(p.half_width, p.d * (p.d - 1) / 2) * pow(p.n, p.r * p.m * (p.m + 1) / 2);
}

BigInt coefficient_sum_bound_pow4d(const SearchParams& p) {
  const unsigned long d = p.d;
  return pow(BigInt(d), 2 * d) * pow2(d * (d - 1)) * pow(p.half_width, 2 * d * (d - 1)) *
         pow(p.n, 2 * p.r * p.m * (p.m + 1));
}

namespace {

IntPoly unscale_and_check(const SearchParams& params, const IntVector& w) {
  const std::size_t d = params.d;
  std::vector<BigInt> coeffs(d);
  BigInt scale = 1;
  BigInt sum = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (j > 0) scale *= params.half_width;
    if (!mpz_divisible_p(w[j].get_mpz_t(), scale.get_mpz_t())) {
      throw InvariantError("reduced vector coefficient " + std::to_string(j) + " not divisible by H^j");
    }
    mpz_divexact(coeffs[j].get_mpz_t(), w[j].get_mpz_t(), scale.get_mpz_t());
    sum += abs(w[j]);
  }
  IntPoly h(std::move(coeffs));
  if (h.is_zero()) throw InvariantError("reduced lattice vector is zero");
  if (pow(sum, 4 * params.d) > coefficient_sum_bound_pow4d(params)) {
    throw InvariantError("short polynomial violates the coefficient-sum bound");
  }
  return h;
}

}  // namespace

IntPoly find_small_polynomial(const SearchParams& params) {
  validate_structure(params);
  const auto shifts = build_shift_polynomials(params.n, params.r, params.m, params.d, params.center);
  return reduce_window(params, build_scaled_basis(shifts, params.half_width)).h;
}

WindowReduction reduce_window(const SearchParams& params, LatticeBasis basis) {
  validate_structure(params);
  if (basis.dim() != params.d) throw InputError("basis has the wrong dimension");
  LllOptions options;
  options.abs_det = scaled_basis_determinant(params);
  options.first_vector_only = true;
  ReducedBasis reduced = lll_reduce(basis, options);
  WindowReduction out;
  out.h = unscale_and_check(params, reduced.rows.front());
  out.reduced_rows = std::move(reduced.rows);
  out.used_exact_fallback = reduced.used_exact_fallback;
  return out;
}

IntMatrix shift_scaled_basis(const IntMatrix& rows, long steps) {
  // Taylor shift of each row by repeated synthetic division.
  IntMatrix out = rows;
  const BigInt s(steps);
  for (auto& c : out) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j-- > i;) mpz_addmul(c[j].get_mpz_t(), c[j + 1].get_mpz_t(), s.get_mpz_t());
    }
  }
  return out;
}

std::vector<BigInt> divisors_from_polynomial(const SearchParams& params, const IntPoly& h) {
  std::vector<BigInt> out;
  if (h.degree() < 1) return out;
  const BigInt lo = params.center - params.half_width;
  const BigInt hi = params.center + params.half_width;
  for (const auto& x0 : integer_roots(h)) {
    BigInt p = params.center + x0;
    if (p < 2 || p < lo || p > hi) continue;
    if (mpz_divisible_p(params.n.get_mpz_t(), pow(p, params.r).get_mpz_t())) out.push_back(std::move(p));
  }
  return out;
}

std::vector<BigInt> search_one_interval(const SearchParams& params) {
  validate(params);
  return divisors_from_polynomial(params, find_small_polynomial(params));
}

}  // namespace rpdiv
