// Compiled with -mavx2 -mfma. Only reached after a CPUID check.

#include <immintrin.h>

#include <cstddef>

#include "rpdiv/kernels.hpp"

namespace rpdiv::kernels::avx2 {
namespace {

// v mod m for 0 <= v < 2^53, m < 2^26, lanes in double. The floored quotient
// is off by at most one, so a single signed correction step suffices.
inline __m256d reduce(__m256d v, __m256d m, __m256d inv_m) {
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(v, inv_m));
  __m256d r = _mm256_fnmadd_pd(q, m, v);
  const __m256d zero = _mm256_setzero_pd();
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), m));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, m, _CMP_GE_OQ), m));
  return r;
}

inline __m256d load4(const std::uint32_t* p) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

inline void store4(std::uint32_t* p, __m256d v) {
  _mm_storeu_si128(reinterpret_cast<__m128i*>(p), _mm256_cvttpd_epi32(v));
}

}  // namespace

void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out) {
  const __m256d radix = _mm256_set1_pd(65536.0);
  const std::size_t n = moduli.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d m0 = load4(moduli.data() + i);
    const __m256d m1 = load4(moduli.data() + i + 4);
    const __m256d inv0 = _mm256_div_pd(_mm256_set1_pd(1.0), m0);
    const __m256d inv1 = _mm256_div_pd(_mm256_set1_pd(1.0), m1);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::uint16_t d : digits) {
      const __m256d dv = _mm256_set1_pd(static_cast<double>(d));
      a0 = reduce(_mm256_fmadd_pd(a0, radix, dv), m0, inv0);
      a1 = reduce(_mm256_fmadd_pd(a1, radix, dv), m1, inv1);
    }
    store4(out.data() + i, a0);
    store4(out.data() + i + 4, a1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d m0 = load4(moduli.data() + i);
    const __m256d inv0 = _mm256_div_pd(_mm256_set1_pd(1.0), m0);
    __m256d a0 = _mm256_setzero_pd();
    for (std::uint16_t d : digits) {
      a0 = reduce(_mm256_fmadd_pd(a0, radix, _mm256_set1_pd(static_cast<double>(d))), m0, inv0);
    }
    store4(out.data() + i, a0);
  }
  if (i < n) scalar::residues(digits, moduli.subspan(i), out.subspan(i));
}

void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out) {
  const __m256d m = _mm256_set1_pd(static_cast<double>(p));
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), m);
  const std::size_t n = points.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x0 = load4(points.data() + i);
    const __m256d x1 = load4(points.data() + i + 4);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      const __m256d c = _mm256_set1_pd(static_cast<double>(coeffs[j]));
      a0 = reduce(_mm256_fmadd_pd(a0, x0, c), m, inv);
      a1 = reduce(_mm256_fmadd_pd(a1, x1, c), m, inv);
    }
    store4(out.data() + i, a0);
    store4(out.data() + i + 4, a1);
  }
  if (i < n) scalar::poly_eval_mod(coeffs, p, points.subspan(i), out.subspan(i));
}

}  // namespace rpdiv::kernels::avx2
