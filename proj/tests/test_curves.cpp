#include <doctest.h>

#include <algorithm>
#include <set>

#include "fibjac/curves.hpp"
#include "fibjac/kernels.hpp"

using namespace fibjac;

namespace {

// Straight scan with GMP's own perfect-square test.
std::vector<std::pair<long, Integer>> scan_oracle(const QuarticCurve& curve, long lo, long hi) {
  std::vector<std::pair<long, Integer>> out;
  for (long x = lo; x <= hi; ++x) {
    const Integer v = curve.rhs(Integer(x));
    if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) continue;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    out.emplace_back(x, r);
  }
  return out;
}

std::vector<std::pair<long, Integer>> as_pairs(const std::vector<IntegerPointRecord>& pts) {
  std::vector<std::pair<long, Integer>> out;
  for (const auto& p : pts) out.emplace_back(p.x.get_si(), p.y);
  return out;
}

}  // namespace

TEST_CASE("brute_points: y^2 = 5x^2(x+3)^2 +- 4") {
  QuarticCurve even;
  const auto e = brute_points(even, -10, 10);
  REQUIRE(e.size() == 2);
  CHECK(e[0].x == -3);
  CHECK(e[0].y == 2);
  CHECK(e[1].x == 0);
  CHECK(e[1].y == 2);
  CHECK(e[0].both_signs);

  QuarticCurve odd;
  odd.parity = Parity::odd;
  const auto o = brute_points(odd, -10, 10);
  REQUIRE(o.size() == 2);
  CHECK(o[0].x == -2);
  CHECK(o[0].y == 4);
  CHECK(o[1].x == -1);
  CHECK(o[1].y == 4);
}

TEST_CASE("brute_points agrees with a direct scan") {
  const std::vector<QuarticCurve> curves = {
      {1, 0, 3, RecurrenceParams(1), Parity::even}, {1, 0, 3, RecurrenceParams(1), Parity::odd},
      {1, 0, 1, RecurrenceParams(1), Parity::even}, {1, 0, 1, RecurrenceParams(1), Parity::odd},
      {2, -1, 4, RecurrenceParams(1), Parity::odd}, {1, 2, 5, RecurrenceParams(3), Parity::even},
      {1, 0, 0, RecurrenceParams(1), Parity::even}, {3, 1, 1, RecurrenceParams(2), Parity::odd}};
  for (const QuarticCurve& c : curves) {
    const auto expect = scan_oracle(c, -3000, 3000);
    CHECK(as_pairs(brute_points(c, -3000, 3000)) == expect);
    CHECK(as_pairs(brute_points(c, -3000, 3000, 1)) == expect);
    CHECK(as_pairs(brute_points(c, -3000, 3000, 5)) == expect);
  }
}

TEST_CASE("brute_points: scalar and SIMD filters give the same points") {
  const QuarticCurve c{1, 0, 1, RecurrenceParams(1), Parity::odd};
  const kernels::Isa saved = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::scalar);
  const auto scalar = brute_points(c, -200000, 200000);
  kernels::set_active_isa(kernels::Isa::avx2);
  const auto simd = brute_points(c, -200000, 200000);
  kernels::set_active_isa(saved);
  CHECK(scalar == simd);
  CHECK_THROWS_AS(brute_points(c, 5, 4), std::invalid_argument);
}

TEST_CASE("brute_points: points are symmetric under x -> -b-c-x") {
  const QuarticCurve c{1, 0, 3, RecurrenceParams(1), Parity::odd};
  const auto pts = brute_points(c, -1000, 997);
  std::set<long> xs;
  for (const auto& p : pts) xs.insert(p.x.get_si());
  for (long x : xs) CHECK(xs.count(-3 - x) == 1);
}

TEST_CASE("discriminant_solvable") {
  const QuarticCurve c;
  CHECK(discriminant_solvable(c, 0, Sign::plus) == std::vector<Integer>{-3, 0});
  CHECK(discriminant_solvable(c, 2, Sign::minus) == std::vector<Integer>{-2, -1});
  CHECK(discriminant_solvable(c, 4, Sign::plus) == std::vector<Integer>{-4, 1});
  CHECK(discriminant_solvable(c, 3, Sign::plus).empty());
  // 9 - 4*3 < 0
  CHECK(discriminant_solvable(c, 3, Sign::minus).empty());

  QuarticCurve flat = c;
  flat.a = 0;
  CHECK_THROWS_AS(discriminant_solvable(flat, 1, Sign::plus), std::invalid_argument);
  QuarticCurve double_root = c;
  double_root.c = 0;
  CHECK_THROWS_AS(discriminant_solvable(double_root, 1, Sign::plus), std::domain_error);

  // Every root really solves a(x+b)(x+c) = sign*F.
  const QuarticCurve g{3, -2, 5, RecurrenceParams(1), Parity::even};
  for (long f = 0; f < 5000; ++f)
    for (Sign s : {Sign::plus, Sign::minus})
      for (const Integer& x : discriminant_solvable(g, f, s))
        REQUIRE(g.a * (x + g.b) * (x + g.c) == to_int(s) * f);
}

TEST_CASE("pell_solutions") {
  const PellScan k1 = pell_solutions(RecurrenceParams(1), 60);
  CHECK(k1.matches_sequence);
  for (const PellSolution& s : k1.solutions)
    REQUIRE(s.y * s.y - 5 * s.x * s.x == 4 * unit(s.parity));
  // X = 1 solves both Y^2 = 9 and Y^2 = 1.
  CHECK(std::count_if(k1.solutions.begin(), k1.solutions.end(), [](const PellSolution& s) { return s.x == 1; }) == 2);

  const PellScan k3 = pell_solutions(RecurrenceParams(3), 40);
  CHECK(k3.matches_sequence);
  std::set<long> xs;
  for (const PellSolution& s : k3.solutions) xs.insert(s.x.get_si());
  CHECK(xs == std::set<long>{-33, -10, -3, -1, 0, 1, 3, 10, 33});
}

TEST_CASE("theorem2_verify") {
  const Theorem2Report small = theorem2_verify(3, 5);
  CHECK(small.ok());
  CHECK(small.witness_indices == std::set<std::uint64_t>{0, 3});

  const Theorem2Report r = theorem2_verify(10, 10);
  CHECK(r.ok());
  CHECK(r.even_points.size() == 2);
  CHECK(r.odd_points.size() == 2);
  CHECK(r.witness_points.size() == 4);
}
