#include <doctest.h>

#include "fibjac/criterion.hpp"
#include "fibjac/recurrences.hpp"

using namespace fibjac;

namespace {

CriterionInstance make(long a, long d, std::uint64_t k, std::uint64_t n, Sign s) {
  return {Integer(a), Integer(d), k, n, s};
}

// Symbol values straight from the definitions, computed by hand for the
// small cases: 4F(16)+9 = 3957, L(16) = 2207; 8F(8)+9L(8) = 591, 469 = 64 + 5*81.
JacobiSign reference_rhs(long upper) { return jacobi(upper, 469); }

}  // namespace

TEST_CASE("criterion_sides: worked instances") {
  SUBCASE("plus sign, n = 8") {
    const CriterionResult r = criterion_sides(make(1, 3, 1, 8, Sign::plus));
    CHECK(r.lhs == JacobiSign::positive);
    CHECK(r.lhs == jacobi(3957, 2207));
    CHECK(r.rhs_inner == JacobiSign::negative);
    CHECK(r.rhs_inner == reference_rhs(591));
    CHECK(r.proper);
    CHECK(r.holds == true);
  }
  SUBCASE("minus sign, n = 8") {
    const CriterionResult r = criterion_sides(make(1, 3, 1, 8, Sign::minus));
    CHECK(r.lhs == jacobi(-3939, 2207));
    CHECK(r.lhs == JacobiSign::positive);
    CHECK(r.rhs_inner == reference_rhs(255));
    CHECK(r.rhs_inner == JacobiSign::negative);
    CHECK(r.holds == true);
  }
  SUBCASE("improper, n = 2") {
    const CriterionTerms t = criterion_terms(make(1, 3, 1, 2, Sign::plus));
    CHECK(t.rhs_upper == 35);
    CHECK(t.rhs_lower == 469);
    const CriterionResult r = criterion_sides(make(1, 3, 1, 2, Sign::plus));
    CHECK_FALSE(r.proper);
    CHECK(r.rhs_inner == JacobiSign::zero);
    CHECK_FALSE(r.holds.has_value());
  }
}

TEST_CASE("is_proper") {
  CHECK(is_proper(make(1, 3, 1, 8, Sign::plus)));
  CHECK(is_proper(make(1, 3, 1, 8, Sign::minus)));
  CHECK_FALSE(is_proper(make(1, 3, 1, 2, Sign::plus)));
}

TEST_CASE("hypotheses are enforced") {
  auto rejects = [](CriterionInstance inst, Hypothesis h) {
    try {
      criterion_sides(inst);
    } catch (const HypothesisError& e) {
      return e.hypothesis() == h;
    }
    return false;
  };
  CHECK(rejects(make(0, 3, 1, 8, Sign::plus), Hypothesis::a_positive));
  CHECK(rejects(make(1, 4, 1, 8, Sign::plus), Hypothesis::d_odd_positive));
  CHECK(rejects(make(1, 3, 2, 8, Sign::plus), Hypothesis::k_odd_positive));
  CHECK(rejects(make(1, 3, 1, 6, Sign::plus), Hypothesis::n_mod_6));
  CHECK(rejects(make(1, 3, 1, 9, Sign::plus), Hypothesis::n_mod_6));
  CHECK(rejects(make(2, 3, 1, 8, Sign::plus), Hypothesis::d_squared_gt_8a));
  // L(4) = 7 shares 7 with a = 7.
  CHECK(rejects(make(7, 9, 1, 4, Sign::plus), Hypothesis::gcd_a_lucas));
}

TEST_CASE("mod 4 / mod 8 facts for odd k and n = +-2 (mod 6)") {
  for (std::uint64_t k = 1; k <= 15; k += 2)
    for (std::uint64_t n = 2; n <= 200; ++n) {
      if (n % 6 != 2 && n % 6 != 4) continue;
      REQUIRE(mpz_fdiv_ui(fib_lucas(RecurrenceParams(k), static_cast<std::int64_t>(n)).l.get_mpz_t(), 4) == 3);
      REQUIRE(mpz_fdiv_ui(fib_lucas(RecurrenceParams(k), static_cast<std::int64_t>(2 * n)).l.get_mpz_t(), 8) == 7);
    }
}

TEST_CASE("right-hand modulus is odd and at least 69") {
  for (long a = 1; a <= 6; ++a)
    for (long d = 1; d <= 9; d += 2)
      for (std::uint64_t k = 1; k <= 5; k += 2) {
        const CriterionInstance inst = make(a, d, k, 2, Sign::plus);
        if (check_hypotheses(inst)) continue;
        const CriterionTerms t = criterion_terms(inst);
        CHECK(mpz_odd_p(t.rhs_lower.get_mpz_t()));
        CHECK(t.rhs_lower >= 69);
        CHECK(t.rhs_upper > 0);
      }
}

TEST_CASE("criterion_sweep: desk-scale bounds") {
  // Counts frozen from an independent sympy evaluation of both symbols.
  const SweepReport r = criterion_sweep({6, 9, 5, 100});
  CHECK(r.failed == 0);
  CHECK(r.tested == 2507);
  CHECK(r.skipped == 417);
  CHECK(r.excluded == 170);
}

TEST_CASE("criterion_sweep: improper instances vanish on both sides") {
  for (std::uint64_t n = 2; n <= 100; ++n) {
    if (n % 6 != 2 && n % 6 != 4) continue;
    for (Sign s : {Sign::plus, Sign::minus}) {
      const CriterionResult r = criterion_sides(make(1, 3, 1, n, s));
      if (!r.proper) CHECK(r.lhs == JacobiSign::zero);
      else CHECK(r.holds == true);
    }
  }
}

TEST_CASE("criterion_sweep: a = 1, d = 3, k = 1") {
  const SweepReport r = criterion_sweep({1, 3, 1, 200});
  CHECK(r.failed == 0);
  CHECK(r.tested > 0);
}

TEST_CASE("criterion_sweep: single index") {
  // n = 2: 8 + 27 = 35 shares 7 with 469, -8 + 27 = 19 does not.
  const SweepReport r = criterion_sweep({1, 3, 1, 2});
  CHECK(r.tested == 1);
  CHECK(r.failed == 0);
  CHECK(r.skipped == 1);
}

TEST_CASE("criterion_sweep: gcd readings") {
  SweepBounds b{6, 9, 5, 100, GcdReading::k_lucas, true};
  const SweepReport k_reading = criterion_sweep(b);
  CHECK(k_reading.failed == 0);
  CHECK(k_reading.reading_divergences > 0);

  b.reading = GcdReading::classical_lucas;
  const SweepReport classical = criterion_sweep(b);
  MESSAGE("classical reading: tested " << classical.tested << ", failed " << classical.failed);
  CHECK(classical.failed == 0);
  CHECK(classical.tested != k_reading.tested);
}
