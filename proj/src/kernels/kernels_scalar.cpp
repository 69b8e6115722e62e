#include "fibjac/kernels.hpp"

namespace fibjac::kernels::scalar {

void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(mul) * in[i] + add) % m);
}

void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < index.size(); ++i) out[i] = table[index[i]] != 0;
}

void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase) {
  const std::size_t period = pattern.size();
  std::size_t pos = phase;
  for (auto& byte : dst) {
    byte &= pattern[pos];
    if (++pos == period) pos = 0;
  }
}

}  // namespace fibjac::kernels::scalar
