#pragma once

// Data-parallel inner loops of the sieve and the curve search.
//
// Each kernel has a portable scalar reference and an AVX2 variant; the
// active implementation is picked once at first use from the CPU features
// (override with FIBJAC_SIMD=scalar). The variants are bit-for-bit
// equivalent; tests/test_kernels.cpp checks that on random inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fibjac::kernels {

/// Largest modulus the AVX2 affine_mod path accepts; products stay below 2^53.
inline constexpr std::uint32_t kAffineModLimit = 1u << 26;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA this CPU and build support.
Isa detected_isa() noexcept;

/// ISA used by the dispatched entry points below.
Isa active_isa() noexcept;

/// Forces the dispatched ISA (tests and benchmarks). Requesting an ISA the
/// CPU lacks falls back to scalar; returns the ISA actually selected.
Isa set_active_isa(Isa isa) noexcept;

/// out[i] = (mul * in[i] + add) mod m. Requires in[i], mul, add < m.
void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out);

/// out[i] = table[index[i]] != 0. Requires index[i] < table.size().
void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out);

/// dst[i] &= pattern[(phase + i) mod pattern.size()]. Requires phase < pattern.size().
void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase);

namespace scalar {
void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out);
void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out);
void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase);
}  // namespace scalar

namespace avx2 {
/// False when the build has no AVX2 translation unit.
bool compiled() noexcept;
void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out);
void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out);
void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase);
}  // namespace avx2

}  // namespace fibjac::kernels
