#include <doctest.h>

#include <random>
#include <vector>

#include "fibjac/kernels.hpp"

using namespace fibjac;

namespace {

bool avx2_available() { return kernels::detected_isa() == kernels::Isa::avx2; }

struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("affine_mod: scalar reference") {
  const std::vector<std::uint32_t> in = {0, 1, 2, 3, 4, 5, 6};
  std::vector<std::uint32_t> out(in.size());
  kernels::scalar::affine_mod(in, 4, 2, 7, out);
  CHECK(out == std::vector<std::uint32_t>{2, 6, 3, 0, 4, 1, 5});
}

TEST_CASE("affine_mod: avx2 equals scalar") {
  if (!avx2_available()) return;
  std::mt19937_64 rng(1);
  for (std::uint32_t m : {3u, 7u, 67u, 2801u, 65521u, (1u << 26) - 5, (1u << 26) + 15, 4294967291u}) {
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
      std::vector<std::uint32_t> in(len);
      for (auto& v : in) v = static_cast<std::uint32_t>(rng() % m);
      const auto mul = static_cast<std::uint32_t>(rng() % m), add = static_cast<std::uint32_t>(rng() % m);
      std::vector<std::uint32_t> a(len), b(len);
      kernels::scalar::affine_mod(in, mul, add, m, a);
      kernels::avx2::affine_mod(in, mul, add, m, b);
      REQUIRE(a == b);
    }
  }
  // extreme operands
  const std::uint32_t m = kernels::kAffineModLimit - 1;
  std::vector<std::uint32_t> in(64, m - 1), a(64), b(64);
  kernels::scalar::affine_mod(in, m - 1, m - 1, m, a);
  kernels::avx2::affine_mod(in, m - 1, m - 1, m, b);
  CHECK(a == b);
}

TEST_CASE("affine_mod: works in place") {
  std::vector<std::uint32_t> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  kernels::affine_mod(v, 3, 1, 11, v);
  CHECK(v == std::vector<std::uint32_t>{4, 7, 10, 2, 5, 8, 0, 3, 6, 9});
}

TEST_CASE("lookup: avx2 equals scalar") {
  std::mt19937_64 rng(2);
  for (std::size_t table_size : {1u, 5u, 67u, 4096u}) {
    std::vector<std::uint32_t> table(table_size);
    for (auto& t : table) t = rng() % 3 == 0 ? 0 : static_cast<std::uint32_t>(rng());
    for (std::size_t len : {0u, 7u, 8u, 9u, 333u}) {
      std::vector<std::uint32_t> idx(len);
      for (auto& i : idx) i = static_cast<std::uint32_t>(rng() % table_size);
      std::vector<std::uint8_t> a(len), b(len);
      kernels::scalar::lookup(idx, table, a);
      for (std::size_t i = 0; i < len; ++i) REQUIRE(a[i] == (table[idx[i]] != 0));
      if (!avx2_available()) continue;
      kernels::avx2::lookup(idx, table, b);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("and_periodic: avx2 equals scalar") {
  std::mt19937_64 rng(3);
  for (std::size_t period : {1u, 2u, 7u, 31u, 32u, 33u, 64u, 65u, 1400u}) {
    std::vector<std::uint8_t> pattern(period);
    for (auto& p : pattern) p = rng() & 1;
    for (std::size_t len : {0u, 1u, 31u, 32u, 100u, 5000u}) {
      const std::size_t phase = rng() % period;
      std::vector<std::uint8_t> dst(len);
      for (auto& d : dst) d = rng() % 4 != 0;
      auto expect = dst;
      for (std::size_t i = 0; i < len; ++i) expect[i] &= pattern[(phase + i) % period];

      auto a = dst, b = dst;
      kernels::scalar::and_periodic(a, pattern, phase);
      REQUIRE(a == expect);
      if (!avx2_available()) continue;
      kernels::avx2::and_periodic(b, pattern, phase);
      REQUIRE(b == expect);
    }
  }
}

TEST_CASE("dispatch") {
  IsaGuard guard;
  CHECK(kernels::set_active_isa(kernels::Isa::scalar) == kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  CHECK(kernels::set_active_isa(kernels::Isa::avx2) == kernels::detected_isa());
  CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
  MESSAGE("detected ISA: " << kernels::isa_name(kernels::detected_isa()));
}
