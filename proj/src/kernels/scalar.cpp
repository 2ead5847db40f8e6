#include "rpdiv/kernels.hpp"

#include <cstddef>

namespace rpdiv::kernels::scalar {

void residues(std::span<const std::uint16_t> digits, std::span<const std::uint32_t> moduli,
              std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t m = moduli[i];
    std::uint64_t r = 0;
    for (std::uint16_t d : digits) r = ((r << 16) | d) % m;
    out[i] = static_cast<std::uint32_t>(r);
  }
}

void poly_eval_mod(std::span<const std::uint32_t> coeffs, std::uint32_t p,
                   std::span<const std::uint32_t> points, std::span<std::uint32_t> out) {
  const std::uint64_t m = p;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint64_t x = points[i];
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * x + coeffs[j]) % m;
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

}  // namespace rpdiv::kernels::scalar
