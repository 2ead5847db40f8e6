#pragma once

// Word-sized modular arithmetic kernels used by the hot loops of the
// brute-force head, the good-prime search and exhaustive root finding
// modulo a small prime.
//
// Every kernel has a scalar reference implementation and an AVX2 variant;
// the variant is chosen once at runtime from CPUID (override with the
// environment variable RPDIV_ISA=scalar|avx2, or force_isa() in tests).
// Both variants produce bit-identical output for all inputs in domain.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rpdiv/bigint.hpp"

namespace rpdiv::kernels {

enum class Isa { kScalar, kAvx2 };

// Moduli must satisfy 2 <= m < kModulusLimit. Products of two residues then
// stay below 2^52 and are exact in a double.
inline constexpr std::uint32_t kModulusLimit = 1u << 26;

bool isa_supported(Isa isa);
Isa active_isa();
// Throws InputError if the ISA is not supported on this machine.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

// Base-2^16 digits of |x|, most significant first. Empty for x = 0.
std::vector<std::uint16_t> to_digits16(const BigInt& x);

// out[i] = (value represented by digits) mod moduli[i].
void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out);

// out[i] = f(points[i]) mod p, with f given by ascending coefficients that
// are already reduced into [0, p) and points in [0, p).
void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out);

namespace scalar {
void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out);
void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out);
}  // namespace scalar

#if defined(RPDIV_HAVE_AVX2)
namespace avx2 {
void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out);
void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out);
}  // namespace avx2
#endif

}  // namespace rpdiv::kernels
