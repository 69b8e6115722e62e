#include "fibjac/recurrences.hpp"

#include <limits>
#include <stdexcept>

namespace fibjac {

namespace {

using u128 = unsigned __int128;

// (F(n), F(n+1)) for the multiplier k by fast doubling:
//   F(2n) = F(n) (2 F(n+1) - k F(n)),  F(2n+1) = F(n)^2 + F(n+1)^2.
std::pair<Integer, Integer> doubling(const Integer& k, std::uint64_t n) {
  Integer a = 0, b = 1, c, d;
  for (int bit = 63; bit >= 0; --bit) {
    c = a * (2 * b - k * a);
    d = a * a + b * b;
    if ((n >> bit) & 1) {
      a = d;
      b = k * d + c;
    } else {
      a = std::move(c);
      b = std::move(d);
    }
  }
  return {a, b};
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) + b) % m);
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : static_cast<std::uint64_t>(static_cast<u128>(a) + m - b);
}

std::pair<std::uint64_t, std::uint64_t> doubling_mod(std::uint64_t k, std::uint64_t n, std::uint64_t m) {
  k %= m;
  std::uint64_t a = 0, b = 1 % m;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t t = sub_mod(add_mod(b, b, m), mulmod(k, a, m), m);
    const std::uint64_t c = mulmod(a, t, m);
    const std::uint64_t d = add_mod(mulmod(a, a, m), mulmod(b, b, m), m);
    if ((n >> bit) & 1) {
      a = d;
      b = add_mod(mulmod(k, d, m), c, m);
    } else {
      a = c;
      b = d;
    }
  }
  return {a, b};
}

void require_modulus(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
}

}  // namespace

RecurrenceParams::RecurrenceParams(std::uint64_t k) : k_(k) {
  if (k_ < 1) throw std::invalid_argument("recurrence multiplier k must be >= 1");
}

Integer RecurrenceParams::discriminant() const {
  const Integer k(static_cast<unsigned long>(k_));
  return k * k + 4;
}

PairFL fib_lucas(const RecurrenceParams& params, std::int64_t n) {
  if (n < 0 && params.k() != 1)
    throw std::invalid_argument("negative indices are only supported for k = 1");
  const std::uint64_t abs_n = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  const Integer k(static_cast<unsigned long>(params.k()));
  auto [f, f_next] = doubling(k, abs_n);
  Integer l = 2 * f_next - k * f;
  if (n < 0) {
    if (abs_n % 2 == 0) f = -f;
    else l = -l;
  }
  return {n, std::move(f), std::move(l)};
}

ResiduePair fib_lucas_mod(const RecurrenceParams& params, std::uint64_t n, std::uint64_t m) {
  require_modulus(m);
  const auto [f, f_next] = doubling_mod(params.k(), n, m);
  const std::uint64_t l = sub_mod(add_mod(f_next, f_next, m), mulmod(params.k() % m, f, m), m);
  return {f, l};
}

std::pair<Integer, Integer> fib_lucas_mod(const RecurrenceParams& params, const Integer& n,
                                          const Integer& m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (n < 0) throw std::invalid_argument("index must be non-negative");
  const Integer k(static_cast<unsigned long>(params.k()));
  Integer a = 0, b = 1, c, d;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    c = (a * (2 * b - k * a)) % m;
    d = (a * a + b * b) % m;
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      a = d;
      b = (k * d + c) % m;
    } else {
      a = std::move(c);
      b = std::move(d);
    }
  }
  Integer f, l;
  mpz_fdiv_r(f.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  const Integer raw_l = 2 * b - k * a;
  mpz_fdiv_r(l.get_mpz_t(), raw_l.get_mpz_t(), m.get_mpz_t());
  return {f, l};
}

std::uint64_t pisano_period(const RecurrenceParams& params, std::uint64_t m) {
  require_modulus(m);
  const u128 cap = static_cast<u128>(6) * m * m;
  const std::uint64_t k = params.k() % m;
  std::uint64_t a = 0, b = 1;
  for (u128 step = 1; step <= cap; ++step) {
    const std::uint64_t next = add_mod(mulmod(k, b, m), a, m);
    a = b;
    b = next;
    if (a == 0 && b == 1) return static_cast<std::uint64_t>(step);
  }
  throw std::runtime_error("pisano_period: no repeat within 6 m^2 steps");
}

ModularOrbit::ModularOrbit(const RecurrenceParams& params, std::uint64_t m, std::uint64_t table_cap)
    : params_(params), m_(m), period_(pisano_period(params, m)) {
  if (period_ > table_cap || m_ > std::numeric_limits<std::uint32_t>::max()) return;
  f_table_.resize(period_);
  l_table_.resize(period_);
  const std::uint64_t k = params.k() % m;
  std::uint64_t a = 0, b = 1;
  for (std::uint64_t n = 0; n < period_; ++n) {
    f_table_[n] = static_cast<std::uint32_t>(a);
    l_table_[n] = static_cast<std::uint32_t>(sub_mod(add_mod(b, b, m), mulmod(k, a, m), m));
    const std::uint64_t next = add_mod(mulmod(k, b, m), a, m);
    a = b;
    b = next;
  }
}

std::uint64_t ModularOrbit::f(std::uint64_t n) const {
  if (has_tables()) return f_table_[n % period_];
  return fib_lucas_mod(params_, n % period_, m_).f;
}

std::uint64_t ModularOrbit::l(std::uint64_t n) const {
  if (has_tables()) return l_table_[n % period_];
  return fib_lucas_mod(params_, n % period_, m_).l;
}

GeneralRecurrence::GeneralRecurrence(Integer a, Integer u0, Integer u1)
    : a_(std::move(a)), u0_(std::move(u0)), u1_(std::move(u1)) {
  if (a_ < 1) throw std::invalid_argument("general recurrence: A must be >= 1");
  if (invariant() == 0) throw std::invalid_argument("general recurrence: degenerate (C = 0)");
}

std::pair<Integer, Integer> associate_pair(const GeneralRecurrence& rec, std::uint64_t n) {
  // U(n) = U1 F(n) + U0 F(n-1) with F the A-Fibonacci sequence, F(-1) = 1.
  const auto [f, f_next] = doubling(rec.a(), n);
  const Integer f_prev = f_next - rec.a() * f;
  return {rec.u1() * f + rec.u0() * f_prev, rec.v1() * f + rec.v0() * f_prev};
}

IdentityReport identity_suite(const RecurrenceParams& params, std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("identity_suite: n_max must be >= 1");
  IdentityReport report;
  report.k = params.k();
  report.n_max = n_max;

  const Integer k(static_cast<unsigned long>(params.k()));
  const Integer disc = params.discriminant();
  const std::uint64_t len = 2 * n_max + 1;
  std::vector<Integer> f(len), l(len);
  f[0] = 0;
  l[0] = 2;
  if (len > 1) {
    f[1] = 1;
    l[1] = k;
  }
  for (std::uint64_t i = 2; i < len; ++i) {
    f[i] = k * f[i - 1] + f[i - 2];
    l[i] = k * l[i - 1] + l[i - 2];
  }

  auto check = [&](bool ok, std::uint64_t n, const char* name) {
    ++report.checks;
    if (!ok) report.violations.push_back({n, name});
  };
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const int unit = n % 2 == 0 ? 1 : -1;
    check(l[2 * n] == l[n] * l[n] - 2 * unit, n, "L(2n) = L(n)^2 - 2(-1)^n");
    check(f[2 * n] == f[n] * l[n], n, "F(2n) = F(n) L(n)");
    check(2 * l[2 * n] == disc * f[n] * f[n] + l[n] * l[n], n, "2 L(2n) = (k^2+4) F(n)^2 + L(n)^2");
    check(l[n] * l[n] - disc * f[n] * f[n] == 4 * unit, n, "L(n)^2 - (k^2+4) F(n)^2 = 4(-1)^n");
  }
  return report;
}

Lemma1Result lemma1_reduce(std::int64_t kk, std::int64_t g, std::int64_t m) {
  if (g % 2 == 0) throw std::invalid_argument("lemma1_reduce: g must be odd");
  const RecurrenceParams classical(1);
  Lemma1Result out;
  out.sign = mod_floor(g, 4) == 1 ? 1 : -1;
  out.modulus = fib_lucas(classical, 2 * kk).l;
  const Integer lhs = fib_lucas(classical, 2 * kk * g + m).f;
  const Integer rhs = out.sign * fib_lucas(classical, 2 * kk + m).f;
  mpz_fdiv_r(out.lhs_residue.get_mpz_t(), lhs.get_mpz_t(), out.modulus.get_mpz_t());
  mpz_fdiv_r(out.rhs_residue.get_mpz_t(), rhs.get_mpz_t(), out.modulus.get_mpz_t());
  out.holds = out.lhs_residue == out.rhs_residue;
  return out;
}

Nu7Check nu7_rule(std::uint64_t m, std::uint64_t verify_bound) {
  if (m == 0 || m % 8 != 0) throw std::invalid_argument("nu7_rule: m must be a positive multiple of 8");
  Nu7Check out;
  std::uint64_t rest = m;
  unsigned v = 0;
  while (rest % 7 == 0) {
    rest /= 7;
    ++v;
  }
  out.predicted = v + 1;
  if (m <= verify_bound) {
    const auto pair = fib_lucas(RecurrenceParams(1), static_cast<std::int64_t>(m));
    out.observed = padic_valuation(7, pair.f);
  }
  return out;
}

}  // namespace fibjac
