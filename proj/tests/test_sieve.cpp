#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "fibjac/arith.hpp"
#include "fibjac/sieve.hpp"
#include "fibjac/verify.hpp"

using namespace fibjac;

namespace {

const SquareCondition kPlus{1, 3, Sign::plus, RecurrenceParams(1)};
const SquareCondition kMinus{1, 3, Sign::minus, RecurrenceParams(1)};

// Euler's criterion on the exact value, no periodicity assumed.
int legendre_exact(const Integer& value, std::uint64_t q) {
  const std::uint64_t r = mod_floor(value, q);
  if (r == 0) return 0;
  return powmod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

bool allows(const SieveState& s, std::uint64_t n) {
  return std::binary_search(s.allowed.begin(), s.allowed.end(), n % s.modulus);
}

}  // namespace

TEST_CASE("step_excluded: small primes") {
  const StepResult q3 = step_excluded(kPlus, 3);
  CHECK(q3.period == 8);
  CHECK(q3.excluded == std::vector<std::uint64_t>{3, 5, 6});

  const StepResult q7 = step_excluded(kPlus, 7);
  CHECK(q7.period == 16);
  // +-1, +-2, +-3, +-6, +-7 (mod 16)
  CHECK(q7.excluded == std::vector<std::uint64_t>{1, 2, 3, 6, 7, 9, 10, 13, 14, 15});

  const StepResult q5 = step_excluded(kPlus, 5);
  CHECK(std::binary_search(q5.excluded.begin(), q5.excluded.end(), 8));
  CHECK(std::binary_search(q5.excluded.begin(), q5.excluded.end(), 16));

  const StepResult q401 = step_excluded(kPlus, 401);
  for (std::uint64_t r : {20, 40, 60, 80, 120, 180})
    CHECK(std::binary_search(q401.excluded.begin(), q401.excluded.end(), r));
  for (std::uint64_t r : {0, 100, 140, 160})
    CHECK_FALSE(std::binary_search(q401.excluded.begin(), q401.excluded.end(), r));

  CHECK_THROWS_AS(step_excluded(kPlus, 2), std::invalid_argument);
  CHECK_THROWS_AS(step_excluded(kPlus, 9), std::invalid_argument);
}

TEST_CASE("step_excluded agrees with exact evaluation") {
  const std::vector<SquareCondition> conditions = {
      kPlus, kMinus, {2, 5, Sign::plus, RecurrenceParams(1)}, {1, 3, Sign::plus, RecurrenceParams(3)},
      {3, 7, Sign::minus, RecurrenceParams(2)}};
  for (const SquareCondition& cond : conditions) {
    for (std::uint64_t q : {3u, 5u, 7u, 11u, 13u, 29u, 47u}) {
      const StepResult step = step_excluded(cond, q);
      for (std::uint64_t n = 0; n <= 600; ++n) {
        const bool excluded = std::binary_search(step.excluded.begin(), step.excluded.end(), n % step.period);
        REQUIRE(excluded == (legendre_exact(cond.value(n), q) == -1));
      }
    }
  }
}

TEST_CASE("refine and pipeline prefixes") {
  SieveState s;
  CHECK(describe(s) == "n unrestricted (mod 1)");
  s = refine(s, step_excluded(kPlus, 3));
  CHECK(s.modulus == 8);
  CHECK(s.allowed == std::vector<std::uint64_t>{0, 1, 2, 4, 7});
  s = refine(s, step_excluded(kPlus, 7));
  CHECK(s.modulus == 16);
  CHECK(s.allowed == std::vector<std::uint64_t>{0, 4, 8, 12});
  CHECK(describe(s) == "n ≡ 0 (mod 4)");

  const PipelineResult full = run_pipeline(kPlus, lemma2_primes());
  CHECK(full.state.modulus == 5600);
  CHECK(full.state.allowed == std::vector<std::uint64_t>{0, 2800});
  CHECK(reduce_modulo(full.state, 2800) == std::vector<std::uint64_t>{0});
  CHECK(describe(full.state) == "n ≡ 0 (mod 2800)");
  REQUIRE(full.trace.size() == 13);
  CHECK(full.trace.front().excluded == 3);
  CHECK(full.trace.back().allowed == 2);

  CHECK(run_pipeline(kPlus, {}).state == SieveState{});
}

TEST_CASE("pipeline order does not matter") {
  std::vector<std::uint64_t> primes = lemma2_primes();
  const SieveState reference = run_pipeline(kPlus, primes).state;
  std::mt19937 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(primes.begin(), primes.end(), rng);
    CHECK(run_pipeline(kPlus, primes).state == reference);
  }
}

TEST_CASE("one more prime settles n = 2800 (mod 5600)") {
  std::vector<std::uint64_t> primes = lemma2_primes();
  primes.push_back(223);
  const SieveState s = run_pipeline(kPlus, primes).state;
  CHECK(describe(s) == "n ≡ 0 (mod 5600)");
}

TEST_CASE("pipeline soundness against exact square test") {
  const SieveState plus = run_pipeline(kPlus, lemma2_primes()).state;
  const SieveState minus = run_pipeline(kMinus, lemma2_primes()).state;
  for (std::uint64_t n = 0; n <= 3000; ++n) {
    if (!allows(plus, n)) REQUIRE_FALSE(integer_sqrt_exact(kPlus.value(n)).has_value());
    const Integer t = kMinus.value(n);
    if (!allows(minus, n) && t >= 0) REQUIRE_FALSE(integer_sqrt_exact(t).has_value());
  }
  // 9 - 4F(3) = 1 is a square, so n = 3 must survive the minus-sign sieve.
  CHECK(allows(minus, 3));
  CHECK(allows(minus, 0));
}

TEST_CASE("canonical_form and reduce_modulo") {
  const SieveState s{24, {0, 6, 12, 18}};
  CHECK(canonical_form(s) == SieveState{6, {0}});
  CHECK(reduce_modulo(s, 12) == std::vector<std::uint64_t>{0, 6});
  CHECK_THROWS_AS(reduce_modulo(s, 5), std::invalid_argument);
  CHECK(describe(SieveState{8, {}}) == "no residue class survives");
  CHECK(describe(SieveState{8, {0, 4}}) == "n ≡ 0 (mod 4)");
  CHECK(describe(SieveState{8, {0, 1}}) == "n ≡ 0, 1 (mod 8)");
}

TEST_CASE("modulus cap") {
  CHECK_THROWS_AS(run_pipeline(kPlus, {3, 7}, 10), SieveCapError);
  CHECK_THROWS_AS(run_pipeline(kPlus, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline(kPlus, {15}), std::invalid_argument);
}

TEST_CASE("auto_search") {
  CHECK(auto_search(kPlus, 2, SieveState{}).empty());
  const auto hits = auto_search(kPlus, 50, SieveState{});
  REQUIRE_FALSE(hits.empty());
  CHECK(hits.front().prime == 3);
  CHECK(hits.front().gain >= 3);

  // After the full list only n = 2800 (mod 5600) remains to be removed.
  const SieveState s = run_pipeline(kPlus, lemma2_primes()).state;
  const auto more = auto_search(kPlus, 300, s);
  REQUIRE_FALSE(more.empty());
  CHECK(std::any_of(more.begin(), more.end(), [](const SearchHit& h) { return h.prime == 223; }));
}

TEST_CASE("parse_plan") {
  std::istringstream good("# plan\n3\n  7  # second\n\n5\r\n");
  CHECK(parse_plan(good) == std::vector<std::uint64_t>{3, 7, 5});

  auto error_line = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_plan(in);
    } catch (const PlanError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("3\n7\n9\n") == 3);
  CHECK(error_line("3\nfoo\n") == 2);
  CHECK(error_line("2\n") == 1);
  CHECK(error_line("# only\n\n11 13\n") == 3);
  CHECK(error_line("-3\n") == 1);
  std::istringstream empty("");
  CHECK(parse_plan(empty).empty());
}
