#include "rpdiv/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <utility>

#include "rpdiv/errors.hpp"

namespace rpdiv::oracle {

std::vector<BigInt> trial_divisors(const BigInt& n, unsigned long r, const BigInt& bound) {
  if (r < 1) throw InputError("r must be at least 1");
  if (bound > BigInt(kTrialBoundLimit)) throw InputError("trial division bound above 2^26");
  std::vector<BigInt> out;
  const unsigned long b = bound < 2 ? 1 : bound.get_ui();
  for (unsigned long p = 2; p <= b; ++p) {
    BigInt q = n;
    unsigned long k = 0;
    while (k < r && q % p == 0) {
      q /= p;
      ++k;
    }
    if (k == r) out.emplace_back(p);
  }
  return out;
}

namespace {

BigInt horner(const IntPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::uint64_t> all_divisors(std::uint64_t c) {
  std::vector<std::pair<std::uint64_t, int>> factors;
  for (std::uint64_t p = 2; p * p <= c; ++p) {
    if (c % p) continue;
    int e = 0;
    while (c % p == 0) {
      c /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (c > 1) factors.emplace_back(c, 1);
  std::vector<std::uint64_t> divs{1};
  for (auto [p, e] : factors) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<BigInt> integer_roots_naive(const IntPoly& f) {
  if (f.is_zero()) throw InputError("zero polynomial");
  std::size_t s = 0;
  while (f.coeffs()[s] == 0) ++s;
  const BigInt trailing = abs(f.coeffs()[s]);
  if (trailing > pow2(52)) throw InputError("trailing coefficient above 2^52");
  std::vector<BigInt> roots;
  if (s > 0) roots.emplace_back(0);
  std::vector<BigInt> tail(f.coeffs().begin() + static_cast<long>(s), f.coeffs().end());
  const IntPoly g(std::move(tail));
  if (g.degree() >= 1) {
    for (std::uint64_t d : all_divisors(trailing.get_ui())) {
      const BigInt pos(static_cast<unsigned long>(d));
      for (const BigInt& x : {pos, BigInt(-pos)}) {
        if (horner(g, x) == 0) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

BigInt coefficient_gcd(const IntPoly& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly normalised_primitive(const IntPoly& f) {
  const BigInt c = coefficient_gcd(f);
  std::vector<BigInt> out;
  for (const auto& x : f.coeffs()) out.push_back(x / c);
  if (out.back() < 0) {
    for (auto& x : out) x = -x;
  }
  return IntPoly(std::move(out));
}

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const BigInt lb = b.leading();
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    std::vector<BigInt> mono(static_cast<std::size_t>(shift) + 1, BigInt(0));
    mono.back() = a.leading();
    a = a * lb - IntPoly(std::move(mono)) * b;
  }
  return a;
}

}  // namespace

IntPoly gcd_classical(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw InputError("gcd_classical needs nonzero polynomials");
  IntPoly a = normalised_primitive(f);
  IntPoly b = normalised_primitive(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly rem = pseudo_remainder(a, b);
    a = std::move(b);
    b = rem.is_zero() ? IntPoly() : normalised_primitive(rem);
  }
  return a.degree() == 0 ? IntPoly{1} : a;
}

BigInt resultant_naive(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw InputError("resultant of the zero polynomial");
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const std::size_t n = static_cast<std::size_t>(g.degree());
  if (m + n > 16) throw InputError("resultant_naive limited to deg f + deg g <= 16");
  const std::size_t size = m + n;
  if (size == 0) return 1;
  // Descending coefficients, shifted one column per row.
  std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = mpq_class(f.coeffs()[m - j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = mpq_class(g.coeffs()[n - j]);
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && s[pivot][col] == 0) ++pivot;
    if (pivot == size) return 0;
    if (pivot != col) {
      std::swap(s[pivot], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (std::size_t row = col + 1; row < size; ++row) {
      if (s[row][col] == 0) continue;
      const mpq_class factor = s[row][col] / s[col][col];
      for (std::size_t k = col; k < size; ++k) s[row][k] -= factor * s[col][k];
    }
  }
  if (det.get_den() != 1) throw InvariantError("non-integral resultant");
  return det.get_num();
}

IntVector shortest_vector_enum(const IntMatrix& basis, unsigned long radius) {
  const std::size_t d = basis.size();
  if (d == 0 || d > 5) throw InputError("shortest_vector_enum needs 1 <= d <= 5");
  for (const auto& row : basis) {
    if (row.size() != basis.front().size()) throw InputError("ragged basis");
  }
  if (radius < 1) throw InputError("radius must be at least 1");
  double boxes = 1;
  for (std::size_t i = 0; i < d; ++i) boxes *= 2.0 * static_cast<double>(radius) + 1;
  if (boxes > 1e7) throw InputError("enumeration box too large");

  const long r = static_cast<long>(radius);
  const std::size_t width = basis.front().size();
  std::vector<long> c(d, -r);
  IntVector best;
  BigInt best_norm = -1;
  for (;;) {
    IntVector v(width, BigInt(0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < width; ++j) v[j] += c[i] * basis[i][j];
    }
    BigInt norm = 0;
    for (const auto& x : v) norm += x * x;
    if (norm != 0 && (best_norm < 0 || norm < best_norm)) {
      best_norm = norm;
      best = std::move(v);
    }
    std::size_t i = 0;
    while (i < d && c[i] == r) c[i++] = -r;
    if (i == d) break;
    ++c[i];
  }
  if (best.empty()) throw InputError("no nonzero vector in the box (dependent rows)");
  const auto first = std::find_if(best.begin(), best.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) {
    for (auto& x : best) x = -x;
  }
  return best;
}

}  // namespace rpdiv::oracle
