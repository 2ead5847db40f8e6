#include <atomic>
#include <cstdlib>
#include <string>

#include "rpdiv/errors.hpp"
#include "rpdiv/kernels.hpp"

namespace rpdiv::kernels {
namespace {

Isa detect() {
  if (const char* env = std::getenv("RPDIV_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::kScalar;
    if (want == "avx2" && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(RPDIV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw InputError("ISA " + std::string(isa_name(isa)) + " not supported here");
  selected().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

std::vector<std::uint16_t> to_digits16(const BigInt& x) {
  std::vector<std::uint16_t> out;
  if (sgn(x) == 0) return out;
  const std::size_t count = (mpz_sizeinbase(x.get_mpz_t(), 2) + 15) / 16;
  out.resize(count);
  std::size_t written = 0;
  // Export little-endian 16-bit words, then reverse to most significant first.
  mpz_export(out.data(), &written, -1, sizeof(std::uint16_t), 0, 0, x.get_mpz_t());
  out.resize(written);
  return {out.rbegin(), out.rend()};
}

void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out) {
#if defined(RPDIV_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::residues(digits, moduli, out);
#endif
  scalar::residues(digits, moduli, out);
}

void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out) {
#if defined(RPDIV_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::poly_eval_mod(coeffs, p, points, out);
#endif
  scalar::poly_eval_mod(coeffs, p, points, out);
}

}  // namespace rpdiv::kernels
