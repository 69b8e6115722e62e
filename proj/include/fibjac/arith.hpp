#pragma once

// Exact integer primitives shared by every other module: the Jacobi symbol,
// integer square roots, p-adic valuations and primality.

#include <cstdint>
#include <optional>
#include <ostream>

#include <gmpxx.h>

namespace fibjac {

using Integer = mpz_class;

/// Value of a Jacobi symbol.
enum class JacobiSign : int { negative = -1, zero = 0, positive = 1 };

constexpr int to_int(JacobiSign s) noexcept { return static_cast<int>(s); }

constexpr JacobiSign operator-(JacobiSign s) noexcept {
  return static_cast<JacobiSign>(-to_int(s));
}

constexpr JacobiSign operator*(JacobiSign a, JacobiSign b) noexcept {
  return static_cast<JacobiSign>(to_int(a) * to_int(b));
}

/// Prints "+1", "0" or "-1".
std::ostream& operator<<(std::ostream& os, JacobiSign s);

/// Jacobi symbol (upper | lower). `lower` must be odd and positive; `upper`
/// may be any integer, negative values going through (-1 | n) = (-1)^((n-1)/2).
/// Throws std::invalid_argument for an even or non-positive lower argument.
JacobiSign jacobi(const Integer& upper, const Integer& lower);

/// Machine-word overload with the same contract.
JacobiSign jacobi(std::int64_t upper, std::uint64_t lower);

/// floor(sqrt(m)) by integer Newton iteration. Throws on negative m.
Integer integer_sqrt_floor(const Integer& m);

/// r with r*r == m, or nullopt when m is not a perfect square.
/// Throws std::invalid_argument on negative m.
std::optional<Integer> integer_sqrt_exact(const Integer& m);

/// Largest e with p^e | m. Rejects m == 0 and composite p.
unsigned padic_valuation(const Integer& p, const Integer& m);

/// Strong-probable-prime test. Deterministic below 2^64 (fixed witness set
/// of the first twelve primes); above that, `rounds` extra random bases.
bool is_prime(const Integer& n, int rounds = 32);
bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Floor modulo for signed values: result in [0, m).
std::uint64_t mod_floor(std::int64_t value, std::uint64_t m) noexcept;
std::uint64_t mod_floor(const Integer& value, std::uint64_t m);

}  // namespace fibjac
