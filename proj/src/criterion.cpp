#include "fibjac/criterion.hpp"

#include "fibjac/recurrences.hpp"

namespace fibjac {

char sign_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

std::string describe(Hypothesis h) {
  switch (h) {
    case Hypothesis::a_positive: return "a must be positive";
    case Hypothesis::d_odd_positive: return "d must be odd and positive";
    case Hypothesis::k_odd_positive: return "k must be odd and positive";
    case Hypothesis::n_mod_6: return "n must be congruent to +-2 mod 6";
    case Hypothesis::d_squared_gt_8a: return "d^2 must exceed 8a";
    case Hypothesis::gcd_a_lucas: return "gcd(a, L(n)) must be 1";
  }
  return "unknown hypothesis";
}

HypothesisError::HypothesisError(Hypothesis h)
    : std::invalid_argument("criterion: " + describe(h)), hypothesis_(h) {}

namespace {

Integer lucas_for_gcd(const CriterionInstance& inst, GcdReading reading) {
  const RecurrenceParams params(reading == GcdReading::k_lucas ? inst.k : 1);
  return fib_lucas(params, static_cast<std::int64_t>(inst.n)).l;
}

bool coprime(const Integer& x, const Integer& y) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g == 1;
}

}  // namespace

std::optional<Hypothesis> check_hypotheses(const CriterionInstance& inst, GcdReading reading) {
  if (inst.a <= 0) return Hypothesis::a_positive;
  if (inst.d <= 0 || mpz_even_p(inst.d.get_mpz_t())) return Hypothesis::d_odd_positive;
  if (inst.k == 0 || inst.k % 2 == 0) return Hypothesis::k_odd_positive;
  if (inst.n % 6 != 2 && inst.n % 6 != 4) return Hypothesis::n_mod_6;
  if (inst.d * inst.d <= 8 * inst.a) return Hypothesis::d_squared_gt_8a;
  if (!coprime(inst.a, lucas_for_gcd(inst, reading))) return Hypothesis::gcd_a_lucas;
  return std::nullopt;
}

CriterionTerms criterion_terms(const CriterionInstance& inst, GcdReading reading) {
  if (auto bad = check_hypotheses(inst, reading)) throw HypothesisError(*bad);

  const RecurrenceParams params(inst.k);
  const auto n = static_cast<std::int64_t>(inst.n);
  const PairFL half = fib_lucas(params, n);
  const PairFL full = fib_lucas(params, 2 * n);

  if (mpz_fdiv_ui(half.l.get_mpz_t(), 4) != 3 || mpz_fdiv_ui(full.l.get_mpz_t(), 8) != 7)
    throw std::logic_error("criterion: L(n) = 3 (mod 4) / L(2n) = 7 (mod 8) violated");

  const int s = to_int(inst.sign);
  const Integer d2 = inst.d * inst.d;
  CriterionTerms t;
  t.lhs_upper = s * 4 * inst.a * full.f + d2;
  t.lhs_lower = full.l;
  t.rhs_upper = s * 8 * inst.a * half.f + d2 * half.l;
  t.rhs_lower = 64 * inst.a * inst.a + params.discriminant() * d2 * d2;
  return t;
}

bool is_proper(const CriterionInstance& inst) {
  const CriterionTerms t = criterion_terms(inst);
  return coprime(t.rhs_upper, t.rhs_lower);
}

CriterionResult criterion_sides(const CriterionInstance& inst, GcdReading reading) {
  const CriterionTerms t = criterion_terms(inst, reading);
  CriterionResult r;
  r.lhs = jacobi(t.lhs_upper, t.lhs_lower);
  r.rhs_inner = jacobi(t.rhs_upper, t.rhs_lower);
  r.proper = r.rhs_inner != JacobiSign::zero;
  if (r.proper) r.holds = r.lhs == -r.rhs_inner;
  return r;
}

SweepReport criterion_sweep(const SweepBounds& bounds) {
  SweepReport report;
  const GcdReading other =
      bounds.reading == GcdReading::k_lucas ? GcdReading::classical_lucas : GcdReading::k_lucas;

  for (std::uint64_t a = 1; a <= bounds.a_max; ++a) {
    for (std::uint64_t d = 1; d <= bounds.d_max; d += 2) {
      if (d * d <= 8 * a) continue;
      for (std::uint64_t k = 1; k <= bounds.k_max; k += 2) {
        for (std::uint64_t n = 2; n <= bounds.n_max; ++n) {
          if (n % 6 != 2 && n % 6 != 4) continue;
          CriterionInstance inst{Integer(static_cast<unsigned long>(a)),
                                 Integer(static_cast<unsigned long>(d)), k, n, Sign::plus};
          const bool valid = !check_hypotheses(inst, bounds.reading).has_value();
          if (bounds.compare_readings && valid != !check_hypotheses(inst, other).has_value())
            ++report.reading_divergences;
          if (!valid) {
            ++report.excluded;
            continue;
          }
          for (Sign s : {Sign::plus, Sign::minus}) {
            inst.sign = s;
            const CriterionResult r = criterion_sides(inst, bounds.reading);
            if (!r.proper) {
              ++report.skipped;
              continue;
            }
            ++report.tested;
            if (!*r.holds) {
              ++report.failed;
              report.failures.push_back(inst);
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace fibjac
