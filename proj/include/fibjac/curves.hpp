#pragma once

// Integer points on the quartic models of the elliptic curves
//
//   y^2 = a^2 (k^2+4) (x+b)^2 (x+c)^2 + 4(-1)^n
//
// Solutions of Y^2 - (k^2+4) X^2 = +-4 are exactly X = +-F(n), Y = +-L(n), so
// a point exists iff a(x+b)(x+c) = +-F(n) for some n of the right parity.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "fibjac/arith.hpp"
#include "fibjac/criterion.hpp"
#include "fibjac/recurrences.hpp"

namespace fibjac {

enum class Parity { even, odd };

constexpr int unit(Parity p) noexcept { return p == Parity::even ? 1 : -1; }
const char* parity_name(Parity p) noexcept;

struct QuarticCurve {
  Integer a = 1;
  Integer b = 0;
  Integer c = 3;
  RecurrenceParams params{1};
  Parity parity = Parity::even;

  /// |a (b - c)|; the discriminant of a(x+b)(x+c) is d^2.
  Integer d() const;
  /// Right-hand side at x.
  Integer rhs(const Integer& x) const;
};

struct IntegerPointRecord {
  Integer x;
  Integer y;  ///< non-negative
  bool both_signs = true;  ///< false only when y == 0
  std::optional<std::uint64_t> n;  ///< witness index from the Fibonacci route

  friend bool operator==(const IntegerPointRecord&, const IntegerPointRecord&) = default;
};

/// Every x in [x_min, x_max] whose right-hand side is a perfect square, sorted
/// by x. The range is split across `threads` workers (0 = hardware concurrency).
std::vector<IntegerPointRecord> brute_points(const QuarticCurve& curve, std::int64_t x_min,
                                             std::int64_t x_max, unsigned threads = 0);

/// Integer roots x of a(x+b)(x+c) = sign*F, via sign*4aF + d^2 = s^2 and
/// x = (-a(b+c) +- s) / (2a). Sorted, possibly empty. Throws
/// std::invalid_argument for a = 0 and std::domain_error when b = c.
std::vector<Integer> discriminant_solvable(const QuarticCurve& curve, const Integer& f, Sign sign);

struct PellSolution {
  Integer x;
  Integer y;  ///< non-negative
  Parity parity;  ///< Y^2 - D X^2 = 4 (-1)^parity
};

struct PellScan {
  std::vector<PellSolution> solutions;  ///< sorted by (X, parity)
  /// |X| values found equal {F(n)} up to the bound.
  bool matches_sequence = false;
};

/// Brute force over |X| <= bound of Y^2 - (k^2+4) X^2 = +-4.
PellScan pell_solutions(const RecurrenceParams& params, std::int64_t bound);

struct Theorem2Report {
  std::int64_t x_bound = 0;
  std::uint64_t n_bound = 0;
  std::vector<IntegerPointRecord> even_points;
  std::vector<IntegerPointRecord> odd_points;
  /// Points obtained from +-F(n) = x(x+3), n <= n_bound, with witness n.
  std::vector<IntegerPointRecord> witness_points;
  std::set<std::uint64_t> witness_indices;
  bool brute_matches = false;
  bool witnesses_match = false;
  bool routes_agree = false;
  bool ok() const noexcept { return brute_matches && witnesses_match && routes_agree; }
};

/// Both searches for y^2 = 5x^2(x+3)^2 +- 4: brute force over |x| <= x_bound
/// and the discriminant route over 0 <= n <= n_bound.
Theorem2Report theorem2_verify(std::int64_t x_bound, std::uint64_t n_bound);

}  // namespace fibjac
