#include "fibjac/arith.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fibjac {

namespace {

constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool fits_u64(const Integer& v) {
  return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

// Binary Jacobi loop on words; `a` already reduced mod n, n odd.
int jacobi_u64(std::uint64_t a, std::uint64_t n, int result) {
  while (a != 0) {
    const int tz = __builtin_ctzll(a);
    a >>= tz;
    if ((tz & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Bitmaps of quadratic residues for the cheap pre-filter in the exact root.
struct SquareResidues {
  static constexpr std::array<std::uint32_t, 4> kModuli = {64, 63, 65, 11};
  std::array<std::array<bool, 65>, 4> is_square{};

  SquareResidues() {
    for (std::size_t i = 0; i < kModuli.size(); ++i)
      for (std::uint32_t r = 0; r < kModuli[i]; ++r) is_square[i][(r * r) % kModuli[i]] = true;
  }
};

const SquareResidues& square_residues() {
  static const SquareResidues table;
  return table;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  std::uint64_t x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1 || x == 0) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s, const Integer& a) {
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer n_minus_one = n - 1;
  if (x == 1 || x == n_minus_one) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_one) return true;
  }
  return false;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, JacobiSign s) {
  switch (s) {
    case JacobiSign::positive: return os << "+1";
    case JacobiSign::negative: return os << "-1";
    case JacobiSign::zero: break;
  }
  return os << "0";
}

JacobiSign jacobi(const Integer& upper, const Integer& lower) {
  if (lower <= 0 || mpz_even_p(lower.get_mpz_t()))
    throw std::invalid_argument("jacobi: lower argument must be odd and positive");

  Integer a;
  Integer n = lower;
  mpz_fdiv_r(a.get_mpz_t(), upper.get_mpz_t(), n.get_mpz_t());
  int result = 1;
  while (a != 0) {
    if (fits_u64(n)) return static_cast<JacobiSign>(jacobi_u64(to_u64(a), to_u64(n), result));
    const mp_bitcnt_t tz = mpz_scan1(a.get_mpz_t(), 0);
    const auto n8 = mpz_getlimbn(n.get_mpz_t(), 0) & 7;
    if (tz != 0) {
      mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), tz);
      if ((tz & 1) && (n8 == 3 || n8 == 5)) result = -result;
    }
    if ((mpz_getlimbn(a.get_mpz_t(), 0) & 3) == 3 && (n8 & 3) == 3) result = -result;
    mpz_swap(a.get_mpz_t(), n.get_mpz_t());
    mpz_tdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return static_cast<JacobiSign>(n == 1 ? result : 0);
}

JacobiSign jacobi(std::int64_t upper, std::uint64_t lower) {
  if (lower == 0 || (lower & 1) == 0)
    throw std::invalid_argument("jacobi: lower argument must be odd and positive");
  return static_cast<JacobiSign>(jacobi_u64(mod_floor(upper, lower), lower, 1));
}

Integer integer_sqrt_floor(const Integer& m) {
  if (m < 0) throw std::invalid_argument("integer_sqrt: negative argument");
  if (m < 2) return m;
  const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  Integer x;
  mpz_setbit(x.get_mpz_t(), (bits + 1) / 2);  // x >= sqrt(m)
  Integer y;
  for (;;) {
    y = (x + m / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

std::optional<Integer> integer_sqrt_exact(const Integer& m) {
  if (m < 0) throw std::invalid_argument("integer_sqrt_exact: negative argument");
  const auto& table = square_residues();
  for (std::size_t i = 0; i < SquareResidues::kModuli.size(); ++i) {
    if (!table.is_square[i][mpz_fdiv_ui(m.get_mpz_t(), SquareResidues::kModuli[i])]) return std::nullopt;
  }
  Integer r = integer_sqrt_floor(m);
  if (r * r != m) return std::nullopt;
  return r;
}

unsigned padic_valuation(const Integer& p, const Integer& m) {
  if (m == 0) throw std::invalid_argument("padic_valuation: valuation of zero is undefined");
  if (!is_prime(p)) throw std::invalid_argument("padic_valuation: p must be prime");
  Integer rest = abs(m);
  unsigned e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses)
    if (!miller_rabin_round(n, d, s, a)) return false;
  return true;
}

bool is_prime(const Integer& n, int rounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  for (std::uint64_t p : kWitnesses)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  Integer d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (std::uint64_t a : kWitnesses)
    if (!miller_rabin_round(n, d, s, Integer(static_cast<unsigned long>(a)))) return false;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  const Integer span = n - 3;
  for (int i = 0; i < rounds; ++i) {
    const Integer a = rng.get_z_range(span) + 2;
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_floor(std::int64_t value, std::uint64_t m) noexcept {
  if (value >= 0) return static_cast<std::uint64_t>(value) % m;
  // -(value + 1) avoids overflow at INT64_MIN.
  const std::uint64_t r = static_cast<std::uint64_t>(-(value + 1)) % m;
  return m - 1 - r;
}

std::uint64_t mod_floor(const Integer& value, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("mod_floor: zero modulus");
  if (m <= std::numeric_limits<unsigned long>::max())
    return mpz_fdiv_ui(value.get_mpz_t(), static_cast<unsigned long>(m));
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), Integer(std::to_string(m)).get_mpz_t());
  return to_u64(r);
}

}  // namespace fibjac
