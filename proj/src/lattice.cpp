#include "rpdiv/lattice.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>

#include "rpdiv/errors.hpp"

namespace rpdiv {
namespace {

// RAII holder for one mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct PrecisionFailure {};

void check_square(const IntMatrix& rows) {
  if (rows.empty()) throw InputError("lattice basis must have at least one row");
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw InputError("lattice basis must be square");
  }
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return acc;
}

// row_k -= q * row_l
void submul_row(IntVector& row_k, const IntVector& row_l, const BigInt& q) {
  for (std::size_t i = 0; i < row_k.size(); ++i) mpz_submul(row_k[i].get_mpz_t(), row_l[i].get_mpz_t(), q.get_mpz_t());
}

IntMatrix identity(std::size_t n) {
  IntMatrix id(n, IntVector(n, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// Nearest integer to num/den for den > 0, ties rounded up.
BigInt round_div(const BigInt& num, const BigInt& den) {
  BigInt q = 2 * num + den;
  BigInt twice = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), twice.get_mpz_t());
  return q;
}

// Floating-point number types for the guided reduction. Each provides the
// handful of operations the Gram-Schmidt recurrences need.

// x87 extended precision: 64-bit mantissa, exponent range far beyond any
// Gram entry that fits in memory.
struct ExtendedOps {
  using Value = long double;
  explicit ExtendedOps(mpfr_prec_t) {}
  Value make() const { return 0; }

  void set(Value& out, const BigInt& z) {
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 63) {
      out = static_cast<Value>(z.get_si());
      return;
    }
    mpz_tdiv_q_2exp(scratch_.get_mpz_t(), z.get_mpz_t(), bits - 63);
    out = std::ldexp(static_cast<Value>(scratch_.get_si()), static_cast<int>(bits - 63));
  }
  static void submul(Value& acc, const Value& a, const Value& b) { acc -= a * b; }
  static void div(Value& out, const Value& a, const Value& b) { out = a / b; }
  static void copy(Value& out, const Value& a) { out = a; }
  static void sub(Value& out, const Value& a) { out -= a; }
  static bool abs_above(const Value& a, double bound) { return std::fabs(a) > bound; }
  static bool finite(const Value& a) { return std::isfinite(a); }
  static int sign(const Value& a) { return (a > 0) - (a < 0); }
  static bool scaled_greater(const Value& a, double c, const Value& b) { return c * a > b; }
  // rounded = nearest integer to a; out = rounded as a BigInt.
  void round(BigInt& out, Value& rounded, const Value& a) {
    rounded = std::nearbyint(a);
    if (std::fabs(rounded) < 9.0e18L) {
      out = static_cast<long>(rounded);
      return;
    }
    int e = 0;
    const Value m = std::frexp(rounded, &e);
    out = static_cast<long>(std::ldexp(m, 63));
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(e - 63));
  }

 private:
  BigInt scratch_;
};

struct MpfrOps {
  using Value = Real;
  explicit MpfrOps(mpfr_prec_t prec) : prec_(prec), tmp_(prec) {}
  Value make() const { return Real(prec_); }

  static void set(Value& out, const BigInt& z) { mpfr_set_z(out.get(), z.get_mpz_t(), MPFR_RNDN); }
  void submul(Value& acc, const Value& a, const Value& b) {
    mpfr_mul(tmp_.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_sub(acc.get(), acc.get(), tmp_.get(), MPFR_RNDN);
  }
  static void div(Value& out, const Value& a, const Value& b) { mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDN); }
  static void copy(Value& out, const Value& a) { mpfr_set(out.get(), a.get(), MPFR_RNDN); }
  static void sub(Value& out, const Value& a) { mpfr_sub(out.get(), out.get(), a.get(), MPFR_RNDN); }
  bool abs_above(const Value& a, double bound) {
    mpfr_abs(tmp_.get(), a.get(), MPFR_RNDN);
    return mpfr_cmp_d(tmp_.get(), bound) > 0;
  }
  static bool finite(const Value& a) { return mpfr_number_p(a.get()) != 0; }
  static int sign(const Value& a) { return mpfr_sgn(a.get()); }
  bool scaled_greater(const Value& a, double c, const Value& b) {
    mpfr_mul_d(tmp_.get(), a.get(), c, MPFR_RNDN);
    return mpfr_cmp(tmp_.get(), b.get()) > 0;
  }
  static void round(BigInt& out, Value& rounded, const Value& a) {
    mpfr_rint(rounded.get(), a.get(), MPFR_RNDN);
    mpfr_get_z(out.get_mpz_t(), rounded.get(), MPFR_RNDN);
  }

 private:
  mpfr_prec_t prec_;
  Real tmp_;
};

// row_k -= x * row_j, with a fast path for word-sized x.
void submul_row_fast(IntVector& row_k, const IntVector& row_j, const BigInt& x) {
  if (x.fits_slong_p()) {
    const long v = x.get_si();
    const unsigned long mag = v < 0 ? 0ul - static_cast<unsigned long>(v) : static_cast<unsigned long>(v);
    for (std::size_t i = 0; i < row_k.size(); ++i) {
      if (v > 0) {
        mpz_submul_ui(row_k[i].get_mpz_t(), row_j[i].get_mpz_t(), mag);
      } else {
        mpz_addmul_ui(row_k[i].get_mpz_t(), row_j[i].get_mpz_t(), mag);
      }
    }
  } else {
    submul_row(row_k, row_j, x);
  }
}

// Lovasz-condition reduction over the exact integer basis and its exact Gram
// matrix, with Gram-Schmidt coefficients recomputed from the Gram matrix in
// floating point (delta = 0.99, eta = 0.51). Throws PrecisionFailure if the
// floating-point data stops making progress. If `stop` is set it is called
// with ||b_1||^2 whenever b_1 changes; returning true ends the reduction.
template <typename Ops>
void guided_lll(IntMatrix& b, IntMatrix* u, mpfr_prec_t prec, const std::function<bool(const BigInt&)>& stop) {
  using Value = typename Ops::Value;
  const std::size_t n = b.size();
  constexpr double kDelta = 0.99;
  constexpr double kEta = 0.51;
  Ops ops(prec);

  // Lower triangle of the Gram matrix; G(i, j) reads either half.
  IntMatrix g(n);
  std::size_t max_bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i].resize(i + 1);
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = dot(b[i], b[j]);
    max_bits = std::max(max_bits, bit_length(g[i][i]));
  }
  auto G = [&](std::size_t i, std::size_t j) -> BigInt& { return i >= j ? g[i][j] : g[j][i]; };
  if (sgn(g[0][0]) == 0) throw InputError("lattice basis rows are linearly dependent");

  std::vector<Value> r(n * n, ops.make());
  std::vector<Value> mu(n * n, ops.make());
  std::vector<Value> s(n + 1, ops.make());
  Value rounded = ops.make();
  BigInt x, t;
  auto R = [&](std::size_t i, std::size_t j) -> Value& { return r[i * n + j]; };
  auto M = [&](std::size_t i, std::size_t j) -> Value& { return mu[i * n + j]; };

  ops.set(R(0, 0), g[0][0]);

  auto compute_row = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      ops.set(R(k, j), G(k, j));
      for (std::size_t i = 0; i < j; ++i) ops.submul(R(k, j), M(j, i), R(k, i));
      ops.div(M(k, j), R(k, j), R(j, j));
      if (!Ops::finite(M(k, j))) throw PrecisionFailure{};
    }
  };

  // b_k -= x b_j, keeping the Gram matrix exact.
  auto reduce_against = [&](std::size_t k, std::size_t j) {
    submul_row_fast(b[k], b[j], x);
    if (u) submul_row_fast((*u)[k], (*u)[j], x);
    // g_kk - 2x g_kj + x^2 g_jj, then g_ki -= x g_ji for i != k.
    t = x * g[j][j];
    t -= 2 * G(k, j);
    mpz_addmul(g[k][k].get_mpz_t(), t.get_mpz_t(), x.get_mpz_t());
    const bool small = x.fits_slong_p();
    const long xs = small ? x.get_si() : 0;
    const unsigned long mag = xs < 0 ? 0ul - static_cast<unsigned long>(xs) : static_cast<unsigned long>(xs);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      mpz_ptr target = G(k, i).get_mpz_t();
      mpz_srcptr source = G(j, i).get_mpz_t();
      if (!small) {
        mpz_submul(target, source, x.get_mpz_t());
      } else if (xs > 0) {
        mpz_submul_ui(target, source, mag);
      } else {
        mpz_addmul_ui(target, source, mag);
      }
    }
  };

  const std::uint64_t iteration_limit = std::uint64_t{4} * n * n * (max_bits + 64) + 10000;
  std::uint64_t iterations = 0;
  std::size_t k = 1;
  while (k < n) {
    if (++iterations > iteration_limit) throw PrecisionFailure{};

    for (int pass = 0;; ++pass) {
      if (pass > 100) throw PrecisionFailure{};
      compute_row(k);
      bool reduced = true;
      for (std::size_t j = 0; j < k && reduced; ++j) reduced = !ops.abs_above(M(k, j), kEta);
      if (reduced) break;
      bool changed = false;
      for (std::size_t j = k; j-- > 0;) {
        ops.round(x, rounded, M(k, j));
        if (sgn(x) == 0) continue;
        changed = true;
        reduce_against(k, j);
        for (std::size_t i = 0; i < j; ++i) ops.submul(M(k, i), rounded, M(j, i));
        Ops::sub(M(k, j), rounded);
      }
      if (!changed) break;  // |mu| slightly above eta but rounds to 0
      if (sgn(g[k][k]) == 0) throw InputError("lattice basis rows are linearly dependent");
    }

    ops.set(s[0], g[k][k]);
    for (std::size_t j = 0; j < k; ++j) {
      Ops::copy(s[j + 1], s[j]);
      ops.submul(s[j + 1], M(k, j), R(k, j));
    }
    if (ops.scaled_greater(R(k - 1, k - 1), kDelta, s[k - 1])) {
      std::swap(b[k], b[k - 1]);
      if (u) std::swap((*u)[k], (*u)[k - 1]);
      // Swap rows/columns k-1 and k of the symmetric Gram matrix.
      for (std::size_t i = 0; i + 1 < k; ++i) std::swap(g[k][i], g[k - 1][i]);
      for (std::size_t i = k + 1; i < n; ++i) std::swap(g[i][k], g[i][k - 1]);
      std::swap(g[k][k], g[k - 1][k - 1]);
      if (k == 1) {
        if (stop && stop(g[0][0])) return;
        ops.set(R(0, 0), g[0][0]);
      } else {
        --k;
      }
    } else {
      if (Ops::sign(s[k]) <= 0) throw PrecisionFailure{};
      Ops::copy(R(k, k), s[k]);
      ++k;
    }
  }
}

// Integral LLL (Cohen, "A Course in Computational Algebraic Number Theory",
// Alg. 2.6.7) with delta = 3/4. Indices below are 1-based to match the
// classical presentation; b[k - 1] is the k-th basis vector.
void integral_lll(IntMatrix& b, IntMatrix* u) {
  const std::size_t n = b.size();
  std::vector<BigInt> d(n + 1);
  std::vector<IntVector> lambda(n + 1, IntVector(n + 1));
  auto vec = [&](std::size_t k) -> IntVector& { return b[k - 1]; };

  auto redi = [&](std::size_t k, std::size_t l) {
    BigInt twice = 2 * lambda[k][l];
    if (mpz_cmpabs(twice.get_mpz_t(), d[l].get_mpz_t()) <= 0) return;
    const BigInt q = round_div(lambda[k][l], d[l]);
    submul_row(vec(k), vec(l), q);
    if (u) submul_row((*u)[k - 1], (*u)[l - 1], q);
    lambda[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
  };

  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k) {
    std::swap(vec(k), vec(k - 1));
    if (u) std::swap((*u)[k - 1], (*u)[k - 2]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    const BigInt lam = lambda[k][k - 1];
    BigInt bb = d[k - 2] * d[k] + lam * lam;
    mpz_divexact(bb.get_mpz_t(), bb.get_mpz_t(), d[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const BigInt t = lambda[i][k];
      BigInt nk = d[k] * lambda[i][k - 1] - lam * t;
      mpz_divexact(nk.get_mpz_t(), nk.get_mpz_t(), d[k - 1].get_mpz_t());
      lambda[i][k] = nk;
      BigInt nk1 = bb * t + lam * lambda[i][k];
      mpz_divexact(nk1.get_mpz_t(), nk1.get_mpz_t(), d[k].get_mpz_t());
      lambda[i][k - 1] = nk1;
    }
    d[k - 1] = bb;
  };

  d[0] = 1;
  d[1] = dot(vec(1), vec(1));
  if (sgn(d[1]) == 0) throw InputError("lattice basis rows are linearly dependent");
  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        BigInt acc = dot(vec(k), vec(j));
        for (std::size_t i = 1; i < j; ++i) {
          acc = d[i] * acc - lambda[k][i] * lambda[j][i];
          mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), d[i - 1].get_mpz_t());
        }
        if (j < k) {
          lambda[k][j] = acc;
        } else {
          if (sgn(acc) == 0) throw InputError("lattice basis rows are linearly dependent");
          d[k] = acc;
        }
      }
    }
    while (true) {
      redi(k, k - 1);
      // 4 d_k d_{k-2} < 3 d_{k-1}^2 - 4 lambda^2 is the 3/4 Lovasz failure.
      const BigInt lhs = 4 * d[k] * d[k - 2];
      const BigInt rhs = 3 * d[k - 1] * d[k - 1] - 4 * lambda[k][k - 1] * lambda[k][k - 1];
      if (lhs < rhs) {
        swapi(k);
        if (k > 2) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
      break;
    }
  }
}

}  // namespace

LatticeBasis::LatticeBasis(IntMatrix rows) : rows_(std::move(rows)) { check_square(rows_); }

bool LatticeBasis::is_lower_triangular() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = i + 1; j < rows_.size(); ++j) {
      if (sgn(rows_[i][j]) != 0) return false;
    }
  }
  return true;
}

BigInt LatticeBasis::triangular_determinant() const {
  if (!is_lower_triangular()) throw InvariantError("basis is not lower-triangular");
  BigInt det = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (sgn(rows_[i][i]) == 0) throw InvariantError("zero on the diagonal of a triangular basis");
    det *= rows_[i][i];
  }
  return det;
}

BigInt squared_norm(const IntVector& v) { return dot(v, v); }

ReducedBasis lll_reduce_exact(const LatticeBasis& basis, LllOptions options) {
  ReducedBasis out{basis.rows(), std::nullopt, true};
  if (options.track_transform) out.transform = identity(basis.dim());
  integral_lll(out.rows, out.transform ? &*out.transform : nullptr);
  return out;
}

namespace {

// ||w||^2d <= 2^(d(d-1)/2) * det^2 for ||w||^2 = norm2.
bool norm_within_bound(const BigInt& norm2, unsigned long d, const BigInt& abs_det) {
  if (sgn(norm2) == 0) return false;
  const unsigned long rhs_bits = d * (d - 1) / 2 + 2 * bit_length(abs_det);
  if (d * (bit_length(norm2) - 1) >= rhs_bits) return false;
  return pow(norm2, d) <= pow2(d * (d - 1) / 2) * abs_det * abs_det;
}

template <typename Ops>
bool try_guided(IntMatrix& rows, IntMatrix* u, mpfr_prec_t prec, const std::function<bool(const BigInt&)>& stop) {
  try {
    guided_lll<Ops>(rows, u, prec, stop);
    return true;
  } catch (const PrecisionFailure&) {
    return false;
  }
}

}  // namespace

ReducedBasis lll_reduce(const LatticeBasis& basis, LllOptions options) {
  const std::size_t n = basis.dim();
  ReducedBasis out{basis.rows(), std::nullopt, false};
  if (options.track_transform) out.transform = identity(n);
  IntMatrix* u = out.transform ? &*out.transform : nullptr;
  if (n == 1) {
    if (sgn(out.rows[0][0]) == 0) throw InputError("lattice basis rows are linearly dependent");
    return out;
  }
  const BigInt det = options.abs_det                    ? *options.abs_det
                     : basis.is_lower_triangular() ? BigInt(abs(basis.triangular_determinant()))
                                                   : BigInt(abs(determinant(basis.rows())));
  if (sgn(det) == 0) throw InputError("lattice basis rows are linearly dependent");
  std::function<bool(const BigInt&)> stop;
  if (options.first_vector_only) {
    stop = [&](const BigInt& norm2) { return norm_within_bound(norm2, n, det); };
  }
  auto done = [&] { return first_vector_within_bound(out.rows, det); };

  // Extended precision first; it is enough for most bases of moderate
  // dimension. Then MPFR at a precision that grows with d; then exact.
  const auto prec = static_cast<mpfr_prec_t>(std::max<std::size_t>(64, (17 * n) / 10 + 64));
  if (try_guided<ExtendedOps>(out.rows, u, 64, stop) && done()) return out;
  if (try_guided<MpfrOps>(out.rows, u, prec, stop) && done()) return out;
  // The rows still span the input lattice; finish exactly from here.
  integral_lll(out.rows, u);
  out.used_exact_fallback = true;
  return out;
}

bool first_vector_within_bound(const IntMatrix& rows, const BigInt& abs_det) {
  const auto d = static_cast<unsigned long>(rows.size());
  const BigInt s = squared_norm(rows.front());
  if (sgn(s) == 0) return false;
  // ||w||^2d <= 2^(d(d-1)/2) * det^2
  return pow(s, d) <= pow2(d * (d - 1) / 2) * abs_det * abs_det;
}

BigInt determinant(const IntMatrix& m) {
  check_square(m);
  const std::size_t n = m.size();
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::optional<IntMatrix> solve_transform(const IntMatrix& input, const IntMatrix& output) {
  check_square(input);
  const std::size_t n = input.size();
  if (output.size() != n) return std::nullopt;
  // Each row u of U solves u * A = o, i.e. A^T u^T = o^T. Gaussian elimination
  // on A^T over Q, shared across all right-hand sides.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = input[j][i];
    for (std::size_t r = 0; r < n; ++r) a[i][n + r] = output[r][i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[c], a[p]);
    const mpq_class pivot = a[c][c];
    for (auto& v : a[c]) v /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = c; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix u(n, IntVector(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class& v = a[i][n + r];
      if (v.get_den() != 1) return std::nullopt;
      u[r][i] = v.get_num();
    }
  }
  return u;
}

bool verify_reduction(const LatticeBasis& input, const ReducedBasis& output) {
  const std::size_t n = input.dim();
  if (output.rows.size() != n) return false;
  for (const auto& row : output.rows) {
    if (row.size() != n) return false;
  }
  const auto u = solve_transform(input.rows(), output.rows);
  if (!u) return false;
  if (abs(determinant(*u)) != 1) return false;
  if (output.transform && *output.transform != *u) return false;
  return first_vector_within_bound(output.rows, abs(determinant(input.rows())));
}

}  // namespace rpdiv
