#include "rpdiv/rootfind.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rpdiv/errors.hpp"
#include "rpdiv/kernels.hpp"

namespace rpdiv {
namespace {

using Word = std::uint64_t;
using WordPoly = std::vector<Word>;

Word mulmod(Word a, Word b, Word p) { return static_cast<Word>((static_cast<unsigned __int128>(a) * b) % p); }

Word powmod(Word base, Word e, Word p) {
  Word acc = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return acc;
}

Word invmod_prime(Word a, Word p) { return powmod(a, p - 2, p); }

void trim(WordPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// a <- a mod b over Z/pZ; b nonzero.
void rem_in_place(WordPoly& a, const WordPoly& b, Word p) {
  const Word inv = invmod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const Word q = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
    }
    trim(a);
  }
}

// f nonzero and gcd(f, f') = 1 in (Z/pZ)[x], by classical Euclid.
bool nonzero_and_squarefree(WordPoly f, Word p) {
  trim(f);
  if (f.empty()) return false;
  WordPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(mulmod(f[i], i % p, p));
  trim(df);
  WordPoly a = std::move(f);
  WordPoly b = std::move(df);
  while (!b.empty()) {
    rem_in_place(a, b, p);
    std::swap(a, b);
  }
  return a.size() == 1;
}

BigInt eval_mod(const std::vector<BigInt>& coeffs, const BigInt& x, const BigInt& m) {
  BigInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

BigInt eval_derivative_mod(const std::vector<BigInt>& coeffs, const BigInt& x, const BigInt& m) {
  BigInt acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 1;) {
    acc *= x;
    acc += coeffs[i] * static_cast<unsigned long>(i);
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

BigInt hensel_lift(const ModPoly& f, const BigInt& u, const BigInt& p, unsigned long k) {
  if (k < 1) throw InputError("hensel_lift: k must be positive");
  if (p < 2) throw InputError("hensel_lift: p must be a prime");
  if (f.modulus() != pow(p, k)) throw InputError("hensel_lift: polynomial must be given modulo p^k");
  if (u < 0 || u >= p) throw InputError("hensel_lift: u must lie in [0, p)");
  if (sgn(eval_mod(f.coeffs(), u, p)) != 0) throw InputError("hensel_lift: f(u) is not 0 mod p");
  if (sgn(eval_derivative_mod(f.coeffs(), u, p)) == 0) throw InputError("hensel_lift: f'(u) is 0 mod p");

  std::vector<unsigned long> exponents{k};
  while (exponents.back() > 1) exponents.push_back((exponents.back() + 1) / 2);
  std::reverse(exponents.begin(), exponents.end());

  BigInt w = u;
  for (std::size_t s = 1; s < exponents.size(); ++s) {
    const unsigned long lo = exponents[s - 1];
    const unsigned long hi = exponents[s];
    const BigInt mod_hi = pow(p, hi);
    const BigInt p_lo = pow(p, lo);
    const BigInt mod_rest = pow(p, hi - lo);
    const BigInt fw = eval_mod(f.coeffs(), w, mod_hi);
    if (!mpz_divisible_p(fw.get_mpz_t(), p_lo.get_mpz_t())) {
      throw InvariantError("hensel_lift: intermediate root is not a root mod p^" + std::to_string(lo));
    }
    BigInt t = -(fw / p_lo);
    BigInt inv;
    const BigInt dfw = eval_derivative_mod(f.coeffs(), w, mod_rest);
    if (mpz_invert(inv.get_mpz_t(), dfw.get_mpz_t(), mod_rest.get_mpz_t()) == 0) {
      throw InvariantError("hensel_lift: derivative not invertible");
    }
    t *= inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod_rest.get_mpz_t());
    w += p_lo * t;
  }
  return w;
}

PrimeSearchResult find_good_prime(const IntPoly& f, unsigned long n, unsigned long b) {
  if (n < 1 || b < n) throw InputError("find_good_prime: need b >= n >= 1");
  if (f.is_zero()) throw InputError("find_good_prime: zero polynomial");
  const std::uint64_t limit = 6ull * n * b + 6ull * n * ceil_lg(n);

  std::vector<std::vector<std::uint16_t>> digits;
  std::vector<bool> negative;
  for (const auto& c : f.coeffs()) {
    digits.push_back(kernels::to_digits16(c));
    negative.push_back(sgn(c) < 0);
  }

  constexpr std::size_t kBlock = 64;
  std::vector<std::uint32_t> moduli;
  std::vector<std::vector<std::uint32_t>> table(f.size());
  std::uint64_t tested_through = 1;
  std::uint64_t bound = std::min<std::uint64_t>(limit, 1024);
  while (true) {
    const auto primes = primes_up_to(bound);
    auto first = std::upper_bound(primes.begin(), primes.end(), tested_through);
    for (auto it = first; it != primes.end();) {
      const auto block_end = it + std::min<std::ptrdiff_t>(kBlock, primes.end() - it);
      const bool use_kernel = *(block_end - 1) < kernels::kModulusLimit;
      moduli.assign(it, block_end);
      for (std::size_t i = 0; i < f.size(); ++i) {
        table[i].resize(moduli.size());
        if (use_kernel) {
          kernels::residues(digits[i], moduli, table[i]);
        } else {
          for (std::size_t j = 0; j < moduli.size(); ++j) {
            const BigInt magnitude = abs(f.coeffs()[i]);
            table[i][j] = static_cast<std::uint32_t>(mpz_fdiv_ui(magnitude.get_mpz_t(), moduli[j]));
          }
        }
      }
      for (std::size_t j = 0; j < moduli.size(); ++j) {
        const Word p = moduli[j];
        WordPoly fp(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          const Word r = table[i][j];
          fp[i] = (negative[i] && r != 0) ? p - r : r;
        }
        if (nonzero_and_squarefree(std::move(fp), p)) return {p, limit};
      }
      it = block_end;
    }
    if (bound == limit) {
      throw InvariantError("find_good_prime: no good prime up to " + std::to_string(limit) +
                           "; input is not squarefree");
    }
    tested_through = bound;
    bound = std::min(limit, 2 * bound);
  }
}

std::vector<BigInt> roots_mod_p(const ModPoly& f, const BigInt& p) {
  if (f.modulus() != p) throw InputError("roots_mod_p: polynomial modulus must equal p");
  std::vector<BigInt> out;
  if (p < kernels::kModulusLimit) {
    const auto q = static_cast<std::uint32_t>(p.get_ui());
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : f.coeffs()) coeffs.push_back(static_cast<std::uint32_t>(c.get_ui()));
    if (coeffs.empty()) {
      for (std::uint32_t u = 0; u < q; ++u) out.emplace_back(u);
      return out;
    }
    constexpr std::uint32_t kChunk = 4096;
    std::vector<std::uint32_t> points(kChunk);
    std::vector<std::uint32_t> values(kChunk);
    for (std::uint32_t start = 0; start < q; start += kChunk) {
      const std::uint32_t count = std::min(kChunk, q - start);
      for (std::uint32_t i = 0; i < count; ++i) points[i] = start + i;
      kernels::poly_eval_mod(coeffs, q, std::span(points.data(), count), std::span(values.data(), count));
      for (std::uint32_t i = 0; i < count; ++i) {
        if (values[i] == 0) out.emplace_back(points[i]);
      }
    }
    return out;
  }
  for (BigInt u = 0; u < p; ++u) {
    if (sgn(eval(f, u)) == 0) out.push_back(u);
  }
  return out;
}

unsigned long hensel_exponent(const BigInt& p, unsigned long n, unsigned long b) {
  // p^(2k) > (n+1) * 2^(2(n+b+1))
  const BigInt target = BigInt(n + 1) * pow2(2 * (n + b + 1));
  const BigInt p2 = p * p;
  unsigned long k = 1;
  BigInt acc = p2;
  while (acc <= target) {
    acc *= p2;
    ++k;
  }
  return k;
}

BigInt signed_residue(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (2 * r >= m) r -= m;
  return r;
}

IntPoly signed_lift(const ModPoly& f) {
  std::vector<BigInt> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(signed_residue(c, f.modulus()));
  return IntPoly(std::move(out));
}

std::vector<BigInt> integer_roots_squarefree(const IntPoly& f, unsigned long n, unsigned long b) {
  if (n < 1 || b < n) throw InputError("integer_roots_squarefree: need b >= n >= 1");
  if (f.degree() != static_cast<int>(n)) throw InputError("integer_roots_squarefree: deg f must equal n");
  if (sup_norm(f) > pow2(b)) throw InputError("integer_roots_squarefree: coefficients exceed 2^b");

  const BigInt p(find_good_prime(f, n, b).p);
  const auto residues = roots_mod_p(reduce_mod(f, p), p);
  const unsigned long k = hensel_exponent(p, n, b);
  const BigInt modulus = pow(p, k);
  const ModPoly fbar = reduce_mod(f, modulus);
  if (fbar.degree() != static_cast<int>(n)) throw InvariantError("leading coefficient vanished mod p^k");

  std::vector<BigInt> out;
  const auto& a = fbar.coeffs();
  for (const auto& u : residues) {
    const BigInt v = hensel_lift(fbar, u, p, k);
    // fbar = (x - v) * gbar mod p^k by synthetic division.
    std::vector<BigInt> q(n);
    q[n - 1] = a[n];
    for (std::size_t i = n - 1; i >= 1; --i) {
      q[i - 1] = a[i] + v * q[i];
      mpz_fdiv_r(q[i - 1].get_mpz_t(), q[i - 1].get_mpz_t(), modulus.get_mpz_t());
    }
    const BigInt root = signed_residue(v, modulus);
    const IntPoly cofactor = signed_lift(ModPoly(modulus, std::move(q)));
    if (IntPoly::linear(-root, 1) * cofactor == f) out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt pack_signed(const IntPoly& f, unsigned long c) {
  BigInt acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), c);
    acc += *it;
  }
  return acc;
}

IntPoly unpack_signed(BigInt value, unsigned long c, std::size_t max_terms) {
  const BigInt half = pow2(c - 1);
  const BigInt full = pow2(c);
  std::vector<BigInt> digits;
  BigInt digit;
  while (sgn(value) != 0) {
    if (digits.size() == max_terms) throw InvariantError("unpack_signed: too many base-2^c digits");
    mpz_fdiv_r_2exp(digit.get_mpz_t(), value.get_mpz_t(), c);
    if (digit >= half) digit -= full;
    value -= digit;
    mpz_fdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), c);
    digits.push_back(digit);
  }
  return IntPoly(std::move(digits));
}

GcdTriple heuristic_gcd(const IntPoly& f, const IntPoly& g, unsigned long n, unsigned long b) {
  if (f.is_zero() || g.is_zero()) throw InputError("heuristic_gcd: inputs must be nonzero");
  if (n < 1 || b < n) throw InputError("heuristic_gcd: need b >= n >= 1");
  if (f.degree() > static_cast<int>(n) || g.degree() > static_cast<int>(n)) {
    throw InputError("heuristic_gcd: degree exceeds n");
  }
  const BigInt bound = pow2(b);
  if (sup_norm(f) > bound || sup_norm(g) > bound) throw InputError("heuristic_gcd: coefficients exceed 2^b");
  if (content(f) != 1 && content(g) != 1) throw InputError("heuristic_gcd: neither input is primitive");

  const unsigned long c = (2 * n + 1) * ceil_lg(n + 1) + 2 * n * n + 2 * n * b + n + b + 2;
  const BigInt f_val = pack_signed(f, c);
  const BigInt g_val = pack_signed(g, c);
  BigInt common;
  mpz_gcd(common.get_mpz_t(), f_val.get_mpz_t(), g_val.get_mpz_t());

  // Digits are delta * h_i; delta is their gcd because h is primitive.
  IntPoly h = unpack_signed(common, c, n + 1);
  h = primitive_part(h).prim;
  if (sgn(h.leading()) < 0) h = -h;

  const BigInt h_val = pack_signed(h, c);
  if (!mpz_divisible_p(f_val.get_mpz_t(), h_val.get_mpz_t()) ||
      !mpz_divisible_p(g_val.get_mpz_t(), h_val.get_mpz_t())) {
    throw InvariantError("heuristic_gcd: h(2^c) does not divide f(2^c) and g(2^c)");
  }
  BigInt fq;
  BigInt gq;
  mpz_divexact(fq.get_mpz_t(), f_val.get_mpz_t(), h_val.get_mpz_t());
  mpz_divexact(gq.get_mpz_t(), g_val.get_mpz_t(), h_val.get_mpz_t());
  GcdTriple out{std::move(h), unpack_signed(std::move(fq), c, n + 1), unpack_signed(std::move(gq), c, n + 1), c};
  if (out.h * out.f_cofactor != f || out.h * out.g_cofactor != g) {
    throw InvariantError("heuristic_gcd: cofactor identity failed");
  }
  return out;
}

std::vector<BigInt> integer_roots(const IntPoly& f) {
  if (f.is_zero()) throw InputError("integer_roots: zero polynomial");
  if (f.degree() < 1) return {};
  const IntPoly prim = primitive_part(f).prim;
  const auto n = static_cast<unsigned long>(prim.degree());
  const BigInt norm = sup_norm(prim);
  const unsigned long b = std::max<unsigned long>({n, ceil_lg(norm), 1});

  const unsigned long b1 = b + ceil_lg(n);
  const GcdTriple split = heuristic_gcd(prim, derivative(prim), n, b1);
  const IntPoly& squarefree = split.f_cofactor;
  const unsigned long b2 = n + b1 + ceil_lg(n + 1);
  return integer_roots_squarefree(squarefree, static_cast<unsigned long>(squarefree.degree()), b2);
}

}  // namespace rpdiv
