#include "fibjac/verify.hpp"

#include <algorithm>
#include <array>
#include <ctime>
#include <functional>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include "fibjac/criterion.hpp"
#include "fibjac/curves.hpp"
#include "fibjac/recurrences.hpp"

#ifndef FIBJAC_VERSION
#define FIBJAC_VERSION "0.0.0"
#endif

namespace fibjac {

namespace {

using json = nlohmann::ordered_json;

struct Bounds {
  std::uint64_t identity_n;
  std::uint64_t associate_n;
  std::int64_t lemma1_kk;
  std::int64_t lemma1_m;
  std::uint64_t lemma3_m;
  std::uint64_t nu7_m;
  SweepBounds theorem1;
  std::int64_t theorem2_x;
  std::uint64_t theorem2_n;
  std::size_t chain_bits;  ///< largest L(2k) evaluated directly in the case checks
};

Bounds bounds_for(Profile p) {
  if (p == Profile::full) {
    return {500, 200, 20, 40, 4096, 2048, {10, 15, 7, 200, GcdReading::k_lucas, true},
            1'000'000, 10'000, std::size_t{1} << 20};
  }
  return {100, 100, 10, 20, 256, 256, {6, 9, 5, 100, GcdReading::k_lucas, true}, 10'000, 100,
          std::size_t{1} << 18};
}

ClaimStatus status_of(bool ok) { return ok ? ClaimStatus::pass : ClaimStatus::fail; }

json residues(const std::vector<std::uint64_t>& v) { return json(v); }

ClaimItem check_identities(const Bounds& b) {
  ClaimItem item{"identities", "Identities for F(2n), L(2n), 2L(2n) and the norm forms", {}, {}};
  std::uint64_t checks = 0, violations = 0;
  for (std::uint64_t k = 1; k <= 9; ++k) {
    const IdentityReport r = identity_suite(RecurrenceParams(k), b.identity_n);
    checks += r.checks;
    violations += r.violations.size();
  }

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> a_dist(1, 20), u_dist(-50, 50);
  std::uint64_t assoc_checks = 0, assoc_violations = 0;
  for (int made = 0; made < 50;) {
    const Integer a(a_dist(rng)), u0(u_dist(rng)), u1(u_dist(rng));
    if (u1 * u1 - a * u0 * u1 - u0 * u0 == 0) continue;
    const GeneralRecurrence rec(a, u0, u1);
    ++made;
    for (std::uint64_t n = 0; n <= b.associate_n; ++n) {
      const auto [u, v] = associate_pair(rec, n);
      ++assoc_checks;
      if (v * v - rec.discriminant() * u * u != 4 * rec.invariant() * (n % 2 == 0 ? 1 : -1))
        ++assoc_violations;
    }
  }
  item.status = status_of(violations == 0 && assoc_violations == 0);
  item.details = {{"k_max", 9},
                  {"n_max", b.identity_n},
                  {"checks", checks},
                  {"violations", violations},
                  {"associate_recurrences", 50},
                  {"associate_n_max", b.associate_n},
                  {"associate_checks", assoc_checks},
                  {"associate_violations", assoc_violations}};
  return item;
}

ClaimItem check_lemma1(const Bounds& b) {
  ClaimItem item{"lemma1", "Lemma 1: F(2kg+m) = +-F(2k+m) mod L(2k)", {}, {}};
  std::uint64_t checks = 0, failures = 0;
  for (std::int64_t kk = 1; kk <= b.lemma1_kk; ++kk)
    for (std::int64_t m = -b.lemma1_m; m <= b.lemma1_m; ++m)
      for (std::int64_t g = 1; g <= 11; g += 2) {
        ++checks;
        if (!lemma1_reduce(kk, g, m).holds) ++failures;
      }
  item.status = status_of(failures == 0);
  item.details = {{"kk_max", b.lemma1_kk}, {"m_abs_max", b.lemma1_m}, {"g", {1, 3, 5, 7, 9, 11}},
                  {"checks", checks}, {"failures", failures}};
  return item;
}

struct CitedStep {
  std::string id;
  std::vector<std::uint64_t> primes;
  std::uint64_t conclusion;  ///< n == 0 (mod conclusion) after this step
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cited;  ///< (n, Q) with symbol -1
};

const std::vector<CitedStep>& cited_steps() {
  static const std::vector<CitedStep> steps = {
      {"lemma2.step1", {3, 7}, 4,
       {{3, 3}, {5, 3}, {6, 3}, {1, 7}, {15, 7}, {2, 7}, {14, 7}, {3, 7}, {13, 7}, {6, 7}, {10, 7},
        {7, 7}, {9, 7}}},
      {"lemma2.step2", {5, 11}, 20, {{4, 11}, {8, 5}, {12, 11}, {16, 5}}},
      {"lemma2.step3", {401, 3001, 101}, 100,
       {{20, 401}, {180, 401}, {40, 401}, {60, 401}, {80, 401}, {120, 401}, {40, 3001}, {10, 101}}},
      {"lemma2.step4", {13, 29, 281, 2801}, 700,
       {{16, 13}, {4, 13}, {6, 29}, {8, 13}, {10, 29}, {600, 2801}, {12, 281}}},
      {"lemma2.step5", {47, 1601}, 2800,
       {{28, 47}, {24, 47}, {20, 47}, {140, 1601}, {8, 47}, {100, 1601}}},
  };
  return steps;
}

std::vector<ClaimItem> check_lemma2() {
  const SquareCondition cond{1, 3, Sign::plus, RecurrenceParams(1)};
  std::vector<ClaimItem> items;

  std::vector<std::uint64_t> prefix;
  SieveState state;
  for (const CitedStep& step : cited_steps()) {
    ClaimItem item{step.id, "Lemma 2, " + step.id.substr(7), {}, {}};
    json cited = json::array();
    bool all_cited = true;
    for (std::uint64_t q : step.primes) {
      const StepResult r = step_excluded(cond, q);
      state = refine(state, r);
      for (const auto& [n, cq] : step.cited) {
        if (cq != q) continue;
        const bool present = std::binary_search(r.excluded.begin(), r.excluded.end(), n % r.period);
        all_cited = all_cited && present;
        cited.push_back({{"n", n}, {"Q", q}, {"period", r.period}, {"excluded", present}});
      }
    }
    const auto reduced = reduce_modulo(state, step.conclusion);
    const bool concluded = reduced == std::vector<std::uint64_t>{0};
    item.status = status_of(all_cited && concluded);
    item.details = {{"primes", step.primes},
                    {"modulus", state.modulus},
                    {"allowed", state.allowed.size()},
                    {"claimed", "n ≡ 0 (mod " + std::to_string(step.conclusion) + ")"},
                    {"state", describe(state)},
                    {"cited_pairs", cited}};
    items.push_back(std::move(item));
  }

  ClaimItem whole{"lemma2", "Lemma 2: 4F(n)+9 square implies n ≡ 0 (mod 2800)", {}, {}};
  const PipelineResult run = run_pipeline(cond, lemma2_primes());
  const auto reduced = reduce_modulo(run.state, 2800);
  json trace = json::array();
  for (const TraceRecord& t : run.trace)
    trace.push_back({{"Q", t.prime}, {"period", t.period}, {"excluded", t.excluded},
                     {"removed", t.removed}, {"modulus", t.modulus}, {"allowed", t.allowed}});

  // Which of the classes 0, +-20, ..., 100 (mod 200) the prime 401 rules out by itself.
  const StepResult q401 = step_excluded(cond, 401);
  std::vector<std::uint64_t> by_401;
  for (std::uint64_t r = 0; r < 200; r += 20)
    if (std::binary_search(q401.excluded.begin(), q401.excluded.end(), r)) by_401.push_back(r);

  whole.status = status_of(reduced == std::vector<std::uint64_t>{0});
  whole.details = {{"primes", lemma2_primes()},
                   {"final_modulus", run.state.modulus},
                   {"final_allowed", residues(run.state.allowed)},
                   {"reduced_mod_2800", residues(reduced)},
                   {"trace", trace},
                   {"q401_excludes_mod_200", residues(by_401)},
                   {"note", "the period lcm is 5600; the allowed set {0, 2800} reduces to {0} mod 2800. "
                            "401 alone leaves 140 and 160 (mod 200), handled by 3001 and 101"}};
  items.push_back(std::move(whole));
  return items;
}

ClaimItem check_lemma3(const Bounds& b) {
  ClaimItem item{"lemma3", "Lemma 3: (+-8F(m) + 9L(m) | 7) = 1 for 16 | m", {}, {}};
  std::uint64_t checks = 0, failures = 0;
  const RecurrenceParams classical(1);
  for (std::uint64_t m = 16; m <= b.lemma3_m; m += 16) {
    const ResiduePair p = fib_lucas_mod(classical, m, 7);
    for (int s : {1, -1}) {
      ++checks;
      const auto upper = static_cast<std::int64_t>(s * 8 * static_cast<std::int64_t>(p.f) + 9 * p.l);
      if (jacobi(upper, 7) != JacobiSign::positive) ++failures;
    }
  }
  item.status = status_of(failures == 0);
  item.details = {{"m_max", b.lemma3_m}, {"checks", checks}, {"failures", failures}};
  return item;
}

ClaimItem check_nu7(const Bounds& b) {
  ClaimItem item{"nu7", "7-adic valuation: nu_7(F(m)) = nu_7(m) + 1 for 8 | m", {}, {}};
  std::uint64_t checks = 0, failures = 0;
  for (std::uint64_t m = 8; m <= b.nu7_m; m += 8) {
    ++checks;
    const Nu7Check c = nu7_rule(m);
    if (!c.observed || !c.consistent()) ++failures;
  }
  item.status = status_of(failures == 0);
  item.details = {{"m_max", b.nu7_m}, {"checks", checks}, {"failures", failures}};
  return item;
}

struct Lemma4Row {
  std::uint64_t multiplier;
  std::array<std::uint64_t, 8> f;  ///< indexed by w mod 8
  std::array<std::uint64_t, 8> l;
};

const std::array<Lemma4Row, 4>& lemma4_rows() {
  static const std::array<Lemma4Row, 4> rows = {{
      {1, {18, 62, 64, 21, 49, 5, 3, 46}, {63, 14, 60, 47, 63, 14, 60, 47}},
      {7, {4, 65, 37, 10, 63, 2, 30, 57}, {33, 15, 22, 13, 33, 15, 22, 13}},
      {25, {21, 49, 5, 3, 46, 18, 62, 64}, {47, 63, 14, 60, 47, 63, 14, 60}},
      {175, {10, 63, 2, 30, 57, 4, 65, 37}, {13, 33, 15, 22, 13, 33, 15, 22}},
  }};
  return rows;
}

ClaimItem check_lemma4() {
  ClaimItem item{"lemma4", "Lemma 4: F and L at 2^w * {1, 7, 25, 175} mod 67", {}, {}};
  const ModularOrbit orbit(RecurrenceParams(1), 67);
  std::uint64_t comparisons = 0;
  json mismatches = json::array();
  for (const Lemma4Row& row : lemma4_rows()) {
    for (std::uint64_t w = 3; w <= 10; ++w) {
      const std::uint64_t n = (std::uint64_t{1} << w) * row.multiplier;
      const std::uint64_t f = orbit.f(n), l = orbit.l(n);
      comparisons += 2;
      if (f != row.f[w % 8]) mismatches.push_back({{"index", n}, {"which", "F"}, {"got", f}, {"table", row.f[w % 8]}});
      if (l != row.l[w % 8]) mismatches.push_back({{"index", n}, {"which", "L"}, {"got", l}, {"table", row.l[w % 8]}});
    }
  }
  item.status = status_of(mismatches.empty());
  item.details = {{"period_mod_67", orbit.period()},
                  {"comparisons", comparisons},
                  {"mismatches", mismatches.size()},
                  {"mismatch_list", mismatches}};
  return item;
}

ClaimItem check_pisano() {
  ClaimItem item{"pisano", "Periods of F modulo the sieve primes and 67", {}, {}};
  const std::array<std::pair<std::uint64_t, std::uint64_t>, 14> expected = {{{3, 8}, {7, 16}, {5, 20},
      {11, 10}, {401, 200}, {3001, 100}, {101, 50}, {13, 28}, {29, 14}, {281, 56}, {2801, 1400},
      {47, 32}, {1601, 160}, {67, 136}}};
  json rows = json::array();
  bool ok = true;
  for (const auto& [m, period] : expected) {
    const std::uint64_t got = pisano_period(RecurrenceParams(1), m);
    ok = ok && got == period;
    rows.push_back({{"m", m}, {"period", got}, {"expected", period}});
  }
  item.status = status_of(ok);
  item.details = {{"periods", rows}};
  return item;
}

ClaimItem check_theorem1(const Bounds& b) {
  ClaimItem item{"theorem1", "Theorem 1: Jacobi symbol criterion", {}, {}};
  const SweepReport r = criterion_sweep(b.theorem1);
  json failures = json::array();
  for (const CriterionInstance& f : r.failures)
    failures.push_back({{"a", f.a.get_str()}, {"d", f.d.get_str()}, {"k", f.k}, {"n", f.n},
                        {"sign", std::string(1, sign_char(f.sign))}});
  item.status = status_of(r.failed == 0 && r.tested > 0);
  item.details = {{"a_max", b.theorem1.a_max},
                  {"d_max", b.theorem1.d_max},
                  {"k_max", b.theorem1.k_max},
                  {"n_max", b.theorem1.n_max},
                  {"tested", r.tested},
                  {"skipped_improper", r.skipped},
                  {"excluded_by_gcd", r.excluded},
                  {"failed", r.failed},
                  {"gcd_reading", "gcd(a, L_k(n))"},
                  {"reading_divergences", r.reading_divergences},
                  {"propriety", "right-hand symbol arguments coprime"},
                  {"failures", failures}};
  return item;
}

json points_json(const std::vector<IntegerPointRecord>& pts) {
  json out = json::array();
  for (const auto& p : pts) {
    json rec = {{"x", p.x.get_str()}, {"y", (p.both_signs ? "±" : "") + p.y.get_str()}};
    if (p.n) rec["n"] = *p.n;
    out.push_back(rec);
  }
  return out;
}

ClaimItem check_theorem2(const Bounds& b) {
  ClaimItem item{"theorem2", "Theorem 2: integer points on y^2 = 5x^2(x+3)^2 + 4(-1)^n", {}, {}};
  const Theorem2Report r = theorem2_verify(b.theorem2_x, b.theorem2_n);
  item.status = status_of(r.ok());
  item.details = {{"x_bound", r.x_bound},
                  {"n_bound", r.n_bound},
                  {"even_points", points_json(r.even_points)},
                  {"odd_points", points_json(r.odd_points)},
                  {"witness_points", points_json(r.witness_points)},
                  {"witness_indices", r.witness_indices},
                  {"brute_matches", r.brute_matches},
                  {"witnesses_match", r.witnesses_match},
                  {"routes_agree", r.routes_agree}};
  return item;
}

// (4F(n)+9 | L(2k)) evaluated directly, F(n) reduced modulo L(2k).
JacobiSign direct_symbol(std::uint64_t n, std::uint64_t k) {
  const RecurrenceParams classical(1);
  const Integer modulus = fib_lucas(classical, static_cast<std::int64_t>(2 * k)).l;
  const auto [f, l] = fib_lucas_mod(classical, Integer(std::to_string(n)), modulus);
  return jacobi(4 * f + 9, modulus);
}

std::size_t lucas_bits(std::uint64_t index) {
  // log2(phi) ~ 0.6942
  return static_cast<std::size_t>(static_cast<double>(index) * 0.6943) + 2;
}

ClaimItem check_cases(const Bounds& b) {
  ClaimItem item{"theorem2.cases", "Theorem 2 proof, Cases 1 and 2", {}, {}};
  const RecurrenceParams classical(1);
  json rows = json::array();
  bool ok = true;
  std::uint64_t direct_checked = 0;
  for (std::uint64_t w = 4; w <= 11; ++w) {
    for (std::uint64_t t : {1, 3}) {
      const std::uint64_t cls = w % 8;
      bool small_k;
      int listed_sign;
      if (t == 1) {
        small_k = cls == 0 || cls == 3 || cls == 5 || cls == 6 || cls == 7;
        listed_sign = small_k ? -1 : 1;
      } else {
        small_k = cls == 1 || cls == 2 || cls == 3 || cls == 4 || cls == 7;
        listed_sign = small_k ? 1 : -1;
      }
      const std::uint64_t k = (std::uint64_t{1} << w) * (small_k ? 1 : 175);
      const std::uint64_t n = 2 * (std::uint64_t{1} << w) * 175 * t;
      const std::uint64_t g = n / (2 * k);
      const int lemma1_sign = g % 4 == 1 ? 1 : -1;

      const ResiduePair r67 = fib_lucas_mod(classical, k, 67);
      const ResiduePair r7 = fib_lucas_mod(classical, k, 7);
      const auto upper67 = listed_sign * 8 * static_cast<std::int64_t>(r67.f) + 9 * static_cast<std::int64_t>(r67.l);
      const auto upper7 = listed_sign * 8 * static_cast<std::int64_t>(r7.f) + 9 * static_cast<std::int64_t>(r7.l);
      const JacobiSign s67 = jacobi(upper67, 67);
      const JacobiSign s7 = jacobi(upper7, 7);
      const JacobiSign predicted = -(s7 * s67);

      json row = {{"w", w}, {"w_mod_8", cls}, {"t_mod_4", t}, {"k", k}, {"g", g},
                  {"g_mod_4", g % 4}, {"sign", listed_sign == 1 ? "+" : "-"},
                  {"symbol_mod_7", to_int(s7)}, {"symbol_mod_67", to_int(s67)},
                  {"predicted", to_int(predicted)}};
      bool row_ok = lemma1_sign == listed_sign && predicted == JacobiSign::negative;
      if (lucas_bits(2 * k) <= b.chain_bits) {
        const JacobiSign direct = direct_symbol(n, k);
        row["direct"] = to_int(direct);
        row_ok = row_ok && direct == JacobiSign::negative;
        ++direct_checked;
      }
      row["ok"] = row_ok;
      ok = ok && row_ok;
      rows.push_back(row);
    }
  }
  item.status = status_of(ok);
  item.details = {{"representatives", "w = 4..11 covers every class mod 8; t = 1, 3"},
                  {"direct_checks", direct_checked},
                  {"note", "Case 2 with k = 2^w is checked with g = 5^2*7t (n = 2*2^w*5^2*7t forces it); "
                           "the printed 5^3 is treated as a typo"},
                  {"rows", rows}};
  return item;
}

ClaimItem check_w3() {
  ClaimItem item{"theorem2.w3", "Theorem 2 proof, w = 3 (n = 2800t, t odd)", {}, {}};
  // The mod 7 symbol fact needs 16 | k; neither k = 8 nor k = 1400 has it.
  json rows = json::array();
  bool uncovered = true;
  for (std::uint64_t t : {1, 3}) {
    for (std::uint64_t k : {8, 1400}) {
      const JacobiSign s = direct_symbol(2800 * t, k);
      uncovered = uncovered && s != JacobiSign::negative;
      rows.push_back({{"t", t}, {"k", k}, {"direct", to_int(s)}});
    }
  }
  // 223 has period 448 and removes the class n ≡ 2800 (mod 5600).
  const SquareCondition cond{1, 3, Sign::plus, RecurrenceParams(1)};
  std::vector<std::uint64_t> primes = lemma2_primes();
  primes.push_back(223);
  const PipelineResult run = run_pipeline(cond, primes);
  const bool closed = reduce_modulo(run.state, 5600) == std::vector<std::uint64_t>{0};
  item.status = status_of(closed);
  item.details = {{"case_analysis_applies", !uncovered},
                  {"direct_symbols", rows},
                  {"extra_prime", 223},
                  {"extra_prime_period", pisano_period(RecurrenceParams(1), 223)},
                  {"state_with_extra_prime", describe(run.state)},
                  {"closed", closed},
                  {"note", "for w = 3 the symbol (4F(n)+9 | L(2k)) is +1 for both choices of k, so the "
                           "case analysis gives no contradiction; adding Q = 223 to the sieve forces "
                           "n ≡ 0 (mod 5600), i.e. w >= 4"}};
  return item;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string_view to_string(Profile p) noexcept { return p == Profile::full ? "full" : "quick"; }

std::string_view to_string(ClaimStatus s) noexcept {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::skipped: break;
  }
  return "skipped";
}

std::string toolkit_version() { return FIBJAC_VERSION; }

std::size_t VerificationReport::count(ClaimStatus s) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [s](const ClaimItem& i) { return i.status == s; }));
}

const std::vector<std::uint64_t>& lemma2_primes() {
  static const std::vector<std::uint64_t> primes = {3, 7, 5, 11, 401, 3001, 101, 13, 29, 281, 2801, 47, 1601};
  return primes;
}

VerificationReport verify_paper(Profile profile) {
  const Bounds b = bounds_for(profile);
  using Group = std::function<std::vector<ClaimItem>()>;
  auto one = [](auto fn) { return [fn] { return std::vector<ClaimItem>{fn()}; }; };
  const std::vector<Group> groups = {
      one([&] { return check_identities(b); }),
      one([&] { return check_lemma1(b); }),
      [] { return check_lemma2(); },
      one([&] { return check_lemma3(b); }),
      one([&] { return check_nu7(b); }),
      one([] { return check_lemma4(); }),
      one([] { return check_pisano(); }),
      one([&] { return check_theorem1(b); }),
      one([&] { return check_theorem2(b); }),
      one([&] { return check_cases(b); }),
      one([] { return check_w3(); }),
  };

  std::vector<std::future<std::vector<ClaimItem>>> pending;
  for (const Group& g : groups) pending.push_back(std::async(std::launch::async, g));

  VerificationReport report;
  report.version = toolkit_version();
  report.timestamp = utc_timestamp();
  report.profile = profile;
  for (auto& f : pending) {
    for (ClaimItem& item : f.get()) report.items.push_back(std::move(item));
  }
  std::sort(report.items.begin(), report.items.end(),
            [](const ClaimItem& l, const ClaimItem& r) { return l.id < r.id; });
  return report;
}

std::string to_jsonl(const VerificationReport& report) {
  std::ostringstream os;
  for (const ClaimItem& item : report.items) {
    const json rec = {{"record", "claim"},
                      {"id", item.id},
                      {"locus", item.locus},
                      {"status", to_string(item.status)},
                      {"details", item.details}};
    os << rec.dump() << '\n';
  }
  const json summary = {{"record", "summary"},
                        {"version", report.version},
                        {"timestamp", report.timestamp},
                        {"profile", to_string(report.profile)},
                        {"claims", report.items.size()},
                        {"pass", report.count(ClaimStatus::pass)},
                        {"fail", report.count(ClaimStatus::fail)},
                        {"skipped", report.count(ClaimStatus::skipped)},
                        {"status", report.passed() ? "pass" : "fail"}};
  os << summary.dump() << '\n';
  return os.str();
}

std::string summary_table(const VerificationReport& report) {
  std::ostringstream os;
  os << "fibjac " << report.version << "  profile=" << to_string(report.profile) << "\n\n";
  os << std::left << std::setw(18) << "claim" << std::setw(9) << "status" << "locus\n";
  os << std::string(80, '-') << '\n';
  for (const ClaimItem& item : report.items)
    os << std::setw(18) << item.id << std::setw(9) << to_string(item.status) << item.locus << '\n';
  os << std::string(80, '-') << '\n';
  os << report.count(ClaimStatus::pass) << " passed, " << report.count(ClaimStatus::fail) << " failed, "
     << report.count(ClaimStatus::skipped) << " skipped: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace fibjac
