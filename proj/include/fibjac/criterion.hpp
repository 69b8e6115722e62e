#pragma once

// Jacobi symbol criterion for k-Fibonacci / k-Lucas numbers. For positive a,
// odd positive d and k with d^2 > 8a, n == +-2 (mod 6) and gcd(a, L(n)) = 1:
//
//   ( +-4a F(2n) + d^2 | L(2n) ) = -( +-8a F(n) + d^2 L(n) | 64a^2 + (k^2+4) d^4 )
//
// whenever the right-hand symbol is proper (its arguments are coprime).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibjac/arith.hpp"

namespace fibjac {

enum class Sign : int { plus = 1, minus = -1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
char sign_char(Sign s) noexcept;

/// Which Lucas number the coprimality hypothesis gcd(a, L(n)) refers to.
enum class GcdReading { k_lucas, classical_lucas };

struct CriterionInstance {
  Integer a;
  Integer d;
  std::uint64_t k = 1;
  std::uint64_t n = 2;
  Sign sign = Sign::plus;
};

enum class Hypothesis {
  a_positive,
  d_odd_positive,
  k_odd_positive,
  n_mod_6,
  d_squared_gt_8a,
  gcd_a_lucas,
};

std::string describe(Hypothesis h);

class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(Hypothesis h);
  Hypothesis hypothesis() const noexcept { return hypothesis_; }

 private:
  Hypothesis hypothesis_;
};

/// First violated hypothesis, if any.
std::optional<Hypothesis> check_hypotheses(const CriterionInstance& inst,
                                           GcdReading reading = GcdReading::k_lucas);

/// The two symbol arguments and moduli of one instance.
struct CriterionTerms {
  Integer lhs_upper;  ///< sign*4a F(2n) + d^2
  Integer lhs_lower;  ///< L(2n)
  Integer rhs_upper;  ///< sign*8a F(n) + d^2 L(n)
  Integer rhs_lower;  ///< 64a^2 + (k^2+4) d^4
};

/// Throws HypothesisError for invalid instances, std::logic_error if the
/// congruences L(n) == 3 (mod 4), L(2n) == 7 (mod 8) ever fail.
CriterionTerms criterion_terms(const CriterionInstance& inst,
                               GcdReading reading = GcdReading::k_lucas);

struct CriterionResult {
  JacobiSign lhs = JacobiSign::zero;
  JacobiSign rhs_inner = JacobiSign::zero;
  bool proper = false;
  /// Set only for proper instances: lhs == -rhs_inner.
  std::optional<bool> holds;
};

/// gcd(sign*8a F(n) + d^2 L(n), 64a^2 + (k^2+4) d^4) == 1.
bool is_proper(const CriterionInstance& inst);

CriterionResult criterion_sides(const CriterionInstance& inst,
                                GcdReading reading = GcdReading::k_lucas);

struct SweepBounds {
  std::uint64_t a_max = 1;
  std::uint64_t d_max = 1;
  std::uint64_t k_max = 1;
  std::uint64_t n_max = 2;
  GcdReading reading = GcdReading::k_lucas;
  /// Also evaluate the other gcd reading and count instances where the
  /// readings disagree on validity.
  bool compare_readings = false;
};

struct SweepReport {
  std::uint64_t tested = 0;    ///< proper evaluations (one per sign)
  std::uint64_t skipped = 0;   ///< improper evaluations
  std::uint64_t failed = 0;
  std::uint64_t excluded = 0;  ///< (a, d, k, n) rejected by the gcd hypothesis
  std::uint64_t reading_divergences = 0;
  std::vector<CriterionInstance> failures;
};

/// All valid instances with a <= a_max, odd d <= d_max, odd k <= k_max,
/// 1 <= n <= n_max, n == +-2 (mod 6), both signs.
SweepReport criterion_sweep(const SweepBounds& bounds);

}  // namespace fibjac
