#pragma once

// k-Fibonacci / k-Lucas sequences
//
//   F(0) = 0, F(1) = 1, L(0) = 2, L(1) = k,  X(n+2) = k X(n+1) + X(n)
//
// evaluated exactly or modulo m by fast doubling, plus the general B = 1
// recurrence with its associate sequence, residue orbits (Pisano periods)
// and the index-reduction and 7-adic facts used by the sieve arguments.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibjac/arith.hpp"

namespace fibjac {

/// Multiplier k >= 1 of the k-Fibonacci recurrence.
class RecurrenceParams {
 public:
  explicit RecurrenceParams(std::uint64_t k = 1);

  std::uint64_t k() const noexcept { return k_; }
  /// k^2 + 4.
  Integer discriminant() const;

  friend bool operator==(const RecurrenceParams&, const RecurrenceParams&) = default;

 private:
  std::uint64_t k_;
};

/// (F(n), L(n)) for one index. Satisfies L^2 - (k^2+4) F^2 = 4 (-1)^n.
struct PairFL {
  std::int64_t n = 0;
  Integer f;
  Integer l;
};

struct ResiduePair {
  std::uint64_t f = 0;
  std::uint64_t l = 0;
  friend bool operator==(const ResiduePair&, const ResiduePair&) = default;
};

/// Exact pair in O(log |n|) doubling steps. Negative n is accepted for k = 1
/// only (F(-n) = (-1)^(n+1) F(n), L(-n) = (-1)^n L(n)).
PairFL fib_lucas(const RecurrenceParams& params, std::int64_t n);

/// (F(n) mod m, L(n) mod m) for n >= 0. Throws for m < 2.
ResiduePair fib_lucas_mod(const RecurrenceParams& params, std::uint64_t n, std::uint64_t m);

/// Same with arbitrary-size index and modulus; residues in [0, m).
std::pair<Integer, Integer> fib_lucas_mod(const RecurrenceParams& params, const Integer& n,
                                          const Integer& m);

/// Minimal period of (F(n) mod m, L(n) mod m). Scans for the first return of
/// the state (F(n), F(n+1)) to (0, 1); gives up past 6 m^2 steps.
std::uint64_t pisano_period(const RecurrenceParams& params, std::uint64_t m);

/// Residue tables of F and L over one full period modulo m. Tables are only
/// materialised when the period fits under `table_cap`; otherwise lookups
/// fall back to modular fast doubling.
class ModularOrbit {
 public:
  static constexpr std::uint64_t kDefaultTableCap = 1'000'000;

  ModularOrbit(const RecurrenceParams& params, std::uint64_t m,
               std::uint64_t table_cap = kDefaultTableCap);

  const RecurrenceParams& params() const noexcept { return params_; }
  std::uint64_t modulus() const noexcept { return m_; }
  std::uint64_t period() const noexcept { return period_; }
  bool has_tables() const noexcept { return !f_table_.empty(); }

  std::uint64_t f(std::uint64_t n) const;
  std::uint64_t l(std::uint64_t n) const;

  /// Empty when the period exceeded the table cap.
  const std::vector<std::uint32_t>& f_table() const noexcept { return f_table_; }
  const std::vector<std::uint32_t>& l_table() const noexcept { return l_table_; }

 private:
  RecurrenceParams params_;
  std::uint64_t m_;
  std::uint64_t period_;
  std::vector<std::uint32_t> f_table_;
  std::vector<std::uint32_t> l_table_;
};

/// U(n+2) = A U(n+1) + U(n) with arbitrary initial terms, and its associate
/// V with V(0) = 2 U(1) - A U(0), V(1) = A U(1) + 2 U(0).
class GeneralRecurrence {
 public:
  /// Throws std::invalid_argument when A < 1 or the sequence is degenerate (C == 0).
  GeneralRecurrence(Integer a, Integer u0, Integer u1);

  const Integer& a() const noexcept { return a_; }
  const Integer& u0() const noexcept { return u0_; }
  const Integer& u1() const noexcept { return u1_; }
  Integer v0() const { return 2 * u1_ - a_ * u0_; }
  Integer v1() const { return a_ * u1_ + 2 * u0_; }
  /// A^2 + 4.
  Integer discriminant() const { return a_ * a_ + 4; }
  /// U1^2 - A U0 U1 - U0^2.
  Integer invariant() const { return u1_ * u1_ - a_ * u0_ * u1_ - u0_ * u0_; }

 private:
  Integer a_, u0_, u1_;
};

/// (U(n), V(n)), satisfying V^2 - D U^2 = 4 C (-1)^n.
std::pair<Integer, Integer> associate_pair(const GeneralRecurrence& rec, std::uint64_t n);

struct IdentityViolation {
  std::uint64_t n = 0;
  std::string identity;
};

struct IdentityReport {
  std::uint64_t k = 1;
  std::uint64_t n_max = 0;
  std::uint64_t checks = 0;
  std::vector<IdentityViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks, for 0 <= n <= n_max,
///   L(2n) = L(n)^2 - 2(-1)^n,  F(2n) = F(n) L(n),  2 L(2n) = (k^2+4) F(n)^2 + L(n)^2
/// and the norm identity L(n)^2 - (k^2+4) F(n)^2 = 4(-1)^n.
IdentityReport identity_suite(const RecurrenceParams& params, std::uint64_t n_max);

/// Classical index reduction modulo L(2kk) (k = 1 sequence):
///   F(2 kk g + m) == sign * F(2 kk + m)  (mod L(2 kk)),  sign = +1 iff g == 1 (mod 4).
struct Lemma1Result {
  int sign = 1;
  Integer modulus;        ///< L(2 kk)
  Integer lhs_residue;    ///< F(2 kk g + m) mod L(2 kk)
  Integer rhs_residue;    ///< sign * F(2 kk + m) mod L(2 kk)
  bool holds = false;
};

/// Throws std::invalid_argument for even g.
Lemma1Result lemma1_reduce(std::int64_t kk, std::int64_t g, std::int64_t m);

struct Nu7Check {
  unsigned predicted = 0;            ///< nu_7(m) + 1
  std::optional<unsigned> observed;  ///< nu_7(F(m)) when m <= verify_bound
  bool consistent() const noexcept { return !observed || *observed == predicted; }
};

/// 7-adic valuation of the Fibonacci number F(m) for m == 0 (mod 8).
/// Throws std::invalid_argument when m <= 0 or 8 does not divide m.
Nu7Check nu7_rule(std::uint64_t m, std::uint64_t verify_bound = 20'000);

}  // namespace fibjac
