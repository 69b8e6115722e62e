#include <atomic>
#include <cstdlib>
#include <string_view>

#include "fibjac/kernels.hpp"

namespace fibjac::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("FIBJAC_SIMD"); env && std::string_view(env) == "scalar")
    return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() noexcept {
  static const Isa isa = avx2::compiled() && cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out) {
  if (active_isa() == Isa::avx2) avx2::affine_mod(in, mul, add, m, out);
  else scalar::affine_mod(in, mul, add, m, out);
}

void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out) {
  if (active_isa() == Isa::avx2) avx2::lookup(index, table, out);
  else scalar::lookup(index, table, out);
}

void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase) {
  if (active_isa() == Isa::avx2) avx2::and_periodic(dst, pattern, phase);
  else scalar::and_periodic(dst, pattern, phase);
}

}  // namespace fibjac::kernels
