#include "fibjac/kernels.hpp"

#include <vector>

#if defined(FIBJAC_HAVE_AVX2_TU)
#include <immintrin.h>
#endif

namespace fibjac::kernels::avx2 {

#if defined(FIBJAC_HAVE_AVX2_TU)

bool compiled() noexcept { return true; }

void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out) {
  if (m >= kAffineModLimit) {
    scalar::affine_mod(in, mul, add, m, out);
    return;
  }
  const __m256d vm = _mm256_set1_pd(static_cast<double>(m));
  const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(m));
  const __m256d vmul = _mm256_set1_pd(static_cast<double>(mul));
  const __m256d vadd = _mm256_set1_pd(static_cast<double>(add));
  const __m256d zero = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) {
    const __m128i x = _mm_loadu_si128(reinterpret_cast<const __m128i*>(in.data() + i));
    // mul * x + add < 2^52, so every step below is exact in double.
    const __m256d p = _mm256_fmadd_pd(vmul, _mm256_cvtepi32_pd(x), vadd);
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(p, vinv));
    __m256d r = _mm256_fnmadd_pd(q, vm, p);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vm));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vm, _CMP_GE_OQ), vm));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(r));
  }
  scalar::affine_mod(in.subspan(i), mul, add, m, out.subspan(i));
}

void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out) {
  const auto* base = reinterpret_cast<const int*>(table.data());
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= index.size(); i += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(index.data() + i));
    const __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    const unsigned is_zero =
        static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, zero))));
    for (int j = 0; j < 8; ++j) out[i + j] = static_cast<std::uint8_t>(((is_zero >> j) & 1) ^ 1);
  }
  scalar::lookup(index.subspan(i), table, out.subspan(i));
}

void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase) {
  constexpr std::size_t kLane = 32;
  const std::size_t period = pattern.size();
  if (dst.size() < kLane) {
    scalar::and_periodic(dst, pattern, phase);
    return;
  }
  // Pattern followed by its first 32 bytes (wrapping as often as needed), so
  // every 32-byte window starting below `period` is contiguous.
  std::vector<std::uint8_t> ext(period + kLane);
  for (std::size_t j = 0; j < ext.size(); ++j) ext[j] = pattern[j % period];

  std::size_t pos = phase;
  std::size_t i = 0;
  for (; i + kLane <= dst.size(); i += kLane) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ext.data() + pos));
    _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), p));
    pos = (pos + kLane) % period;
  }
  scalar::and_periodic(dst.subspan(i), pattern, pos);
}

#else

bool compiled() noexcept { return false; }

void affine_mod(std::span<const std::uint32_t> in, std::uint32_t mul, std::uint32_t add,
                std::uint32_t m, std::span<std::uint32_t> out) {
  scalar::affine_mod(in, mul, add, m, out);
}

void lookup(std::span<const std::uint32_t> index, std::span<const std::uint32_t> table,
            std::span<std::uint8_t> out) {
  scalar::lookup(index, table, out);
}

void and_periodic(std::span<std::uint8_t> dst, std::span<const std::uint8_t> pattern,
                  std::size_t phase) {
  scalar::and_periodic(dst, pattern, phase);
}

#endif

}  // namespace fibjac::kernels::avx2
