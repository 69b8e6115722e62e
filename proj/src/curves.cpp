#include "fibjac/curves.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <thread>

#include "fibjac/kernels.hpp"

namespace fibjac {

namespace {

// Small moduli for the quadratic-residue pre-filter of brute_points.
constexpr std::array<std::uint64_t, 16> kFilterModuli = {64, 63, 65, 11, 17, 19, 23, 29,
                                                        31, 37, 41, 43, 47, 53, 59, 61};
constexpr std::size_t kBlock = 1 << 16;

// pattern[j] = 1 iff rhs(x) can be a square for x == j (mod m).
std::vector<std::uint8_t> residue_pattern(const QuarticCurve& curve, std::uint64_t m) {
  std::vector<std::uint8_t> square(m, 0);
  for (std::uint64_t r = 0; r < m; ++r) square[r * r % m] = 1;

  const std::uint64_t a = mod_floor(curve.a, m);
  const std::uint64_t lead = a * a % m * mod_floor(curve.params.discriminant(), m) % m;
  const std::uint64_t b = mod_floor(curve.b, m);
  const std::uint64_t c = mod_floor(curve.c, m);
  const std::uint64_t tail = mod_floor(std::int64_t{4} * unit(curve.parity), m);

  std::vector<std::uint8_t> pattern(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    const std::uint64_t u = (j + b) % m * ((j + c) % m) % m;
    pattern[j] = square[(lead * (u * u % m) + tail) % m];
  }
  return pattern;
}

void scan_range(const QuarticCurve& curve, const std::vector<std::vector<std::uint8_t>>& patterns,
                std::int64_t lo, std::int64_t hi, std::vector<IntegerPointRecord>& out) {
  std::vector<std::uint8_t> mask;
  for (std::int64_t start = lo; start <= hi;) {
    const auto len = static_cast<std::size_t>(std::min<std::int64_t>(kBlock - 1, hi - start) + 1);
    mask.assign(len, 1);
    for (std::size_t i = 0; i < kFilterModuli.size(); ++i)
      kernels::and_periodic(mask, patterns[i], mod_floor(start, kFilterModuli[i]));
    for (std::size_t i = 0; i < len; ++i) {
      if (!mask[i]) continue;
      const Integer x(static_cast<long>(start + static_cast<std::int64_t>(i)));
      const Integer value = curve.rhs(x);
      if (value < 0) continue;
      if (auto y = integer_sqrt_exact(value)) out.push_back({x, *y, *y != 0, std::nullopt});
    }
    start += static_cast<std::int64_t>(len);
  }
}

}  // namespace

const char* parity_name(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

Integer QuarticCurve::d() const { return abs(a * (b - c)); }

Integer QuarticCurve::rhs(const Integer& x) const {
  const Integer u = (x + b) * (x + c);
  return a * a * params.discriminant() * u * u + 4 * unit(parity);
}

std::vector<IntegerPointRecord> brute_points(const QuarticCurve& curve, std::int64_t x_min,
                                             std::int64_t x_max, unsigned threads) {
  if (x_min > x_max) throw std::invalid_argument("brute_points: empty range");
  std::vector<std::vector<std::uint8_t>> patterns;
  for (std::uint64_t m : kFilterModuli) patterns.push_back(residue_pattern(curve, m));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto span = static_cast<unsigned __int128>(x_max - x_min) + 1;
  threads = static_cast<unsigned>(std::min<unsigned __int128>(threads, (span + kBlock - 1) / kBlock));
  threads = std::max(threads, 1u);

  std::vector<std::vector<IntegerPointRecord>> parts(threads);
  {
    std::vector<std::jthread> workers;
    const auto chunk = static_cast<std::int64_t>(span / threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::int64_t lo = x_min + chunk * t;
      const std::int64_t hi = t + 1 == threads ? x_max : lo + chunk - 1;
      workers.emplace_back([&, lo, hi, t] { scan_range(curve, patterns, lo, hi, parts[t]); });
    }
  }
  std::vector<IntegerPointRecord> points;
  for (auto& part : parts) points.insert(points.end(), part.begin(), part.end());
  return points;
}

std::vector<Integer> discriminant_solvable(const QuarticCurve& curve, const Integer& f, Sign sign) {
  if (curve.a == 0) throw std::invalid_argument("discriminant_solvable: a must be nonzero");
  if (curve.b == curve.c)
    throw std::domain_error("discriminant_solvable: b = c gives a zero discriminant; use brute_points");

  const Integer d = curve.d();
  const Integer disc = to_int(sign) * 4 * curve.a * f + d * d;
  std::vector<Integer> roots;
  if (disc < 0) return roots;
  const auto s = integer_sqrt_exact(disc);
  if (!s) return roots;

  const Integer denom = 2 * curve.a;
  const Integer base = -curve.a * (curve.b + curve.c);
  for (const Integer& num : std::array<Integer, 2>{base - *s, base + *s}) {
    if (mpz_divisible_p(num.get_mpz_t(), denom.get_mpz_t())) roots.push_back(num / denom);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

PellScan pell_solutions(const RecurrenceParams& params, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("pell_solutions: bound must be >= 1");
  const Integer disc = params.discriminant();
  PellScan scan;
  std::set<Integer> found;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    const Integer big_x(static_cast<long>(x));
    const Integer base = disc * big_x * big_x;
    for (Parity p : {Parity::even, Parity::odd}) {
      const Integer target = base + 4 * unit(p);
      if (target < 0) continue;
      if (auto y = integer_sqrt_exact(target)) {
        scan.solutions.push_back({big_x, *y, p});
        found.insert(abs(big_x));
      }
    }
  }

  std::set<Integer> expected;
  const Integer k(static_cast<unsigned long>(params.k()));
  for (Integer f = 0, g = 1; f <= bound;) {
    expected.insert(f);
    Integer next = k * g + f;
    f = std::exchange(g, std::move(next));
  }
  scan.matches_sequence = found == expected;
  return scan;
}

Theorem2Report theorem2_verify(std::int64_t x_bound, std::uint64_t n_bound) {
  if (x_bound < 1 || n_bound < 1) throw std::invalid_argument("theorem2_verify: bounds must be >= 1");
  Theorem2Report report;
  report.x_bound = x_bound;
  report.n_bound = n_bound;

  QuarticCurve even_curve{1, 0, 3, RecurrenceParams(1), Parity::even};
  QuarticCurve odd_curve = even_curve;
  odd_curve.parity = Parity::odd;
  report.even_points = brute_points(even_curve, -x_bound, x_bound);
  report.odd_points = brute_points(odd_curve, -x_bound, x_bound);

  auto make = [](long x, long y, std::optional<std::uint64_t> n) {
    return IntegerPointRecord{Integer(x), Integer(y), true, n};
  };
  const std::vector<IntegerPointRecord> expected_even = {make(-3, 2, {}), make(0, 2, {})};
  const std::vector<IntegerPointRecord> expected_odd = {make(-2, 4, {}), make(-1, 4, {})};
  report.brute_matches = report.even_points == expected_even && report.odd_points == expected_odd;

  // +-F(n) = x(x+3) with the point's y recovered from the curve of parity n.
  Integer f = 0, f_next = 1;
  for (std::uint64_t n = 0; n <= n_bound; ++n) {
    const QuarticCurve& curve = n % 2 == 0 ? even_curve : odd_curve;
    for (Sign s : {Sign::plus, Sign::minus}) {
      for (const Integer& x : discriminant_solvable(curve, f, s)) {
        const auto y = integer_sqrt_exact(curve.rhs(x));
        if (!y) continue;
        IntegerPointRecord rec{x, *y, *y != 0, n};
        if (std::find(report.witness_points.begin(), report.witness_points.end(), rec) ==
            report.witness_points.end()) {
          report.witness_points.push_back(rec);
          report.witness_indices.insert(n);
        }
      }
    }
    Integer next = f_next + f;
    f = std::exchange(f_next, std::move(next));
  }
  std::sort(report.witness_points.begin(), report.witness_points.end(),
            [](const auto& l, const auto& r) { return l.x < r.x; });
  const std::vector<IntegerPointRecord> expected_witness = {make(-3, 2, 0), make(-2, 4, 3), make(-1, 4, 3),
                                                            make(0, 2, 0)};
  report.witnesses_match = report.witness_indices == std::set<std::uint64_t>{0, 3} &&
                           report.witness_points == expected_witness;

  // Every brute-force point is reached by the Fibonacci route with a witness
  // of matching parity, and conversely.
  auto covered = [&](const std::vector<IntegerPointRecord>& pts, std::uint64_t parity) {
    return std::all_of(pts.begin(), pts.end(), [&](const IntegerPointRecord& p) {
      return std::any_of(report.witness_points.begin(), report.witness_points.end(), [&](const auto& w) {
        return w.x == p.x && w.y == p.y && *w.n % 2 == parity;
      });
    });
  };
  const bool witnesses_in_brute = std::all_of(
      report.witness_points.begin(), report.witness_points.end(), [&](const IntegerPointRecord& w) {
        const auto& pool = *w.n % 2 == 0 ? report.even_points : report.odd_points;
        if (abs(w.x) > x_bound) return true;
        return std::any_of(pool.begin(), pool.end(),
                           [&](const auto& p) { return p.x == w.x && p.y == w.y; });
      });
  report.routes_agree = covered(report.even_points, 0) && covered(report.odd_points, 1) && witnesses_in_brute;
  return report;
}

}  // namespace fibjac
