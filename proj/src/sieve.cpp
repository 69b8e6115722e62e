#include "fibjac/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "fibjac/kernels.hpp"

namespace fibjac {

namespace {

void require_odd_prime(std::uint64_t q) {
  if (q % 2 == 0 || !is_prime(q)) throw std::invalid_argument("sieve: " + std::to_string(q) + " is not an odd prime");
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  const unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
  if (l > cap) {
    throw SieveCapError("sieve: modulus lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") exceeds cap " + std::to_string(cap) + "; try reordering or dropping primes");
  }
  return static_cast<std::uint64_t>(l);
}

std::vector<std::uint64_t> nonzero_positions(const std::vector<std::uint8_t>& mask) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace

Integer SquareCondition::value(std::uint64_t n) const {
  const Integer f = fib_lucas(params, static_cast<std::int64_t>(n)).f;
  return to_int(sign) * 4 * a * f + d * d;
}

StepResult step_excluded(const SquareCondition& cond, std::uint64_t prime) {
  require_odd_prime(prime);
  if (prime > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("sieve: prime exceeds 32 bits");

  const ModularOrbit orbit(cond.params, prime);
  StepResult out;
  out.prime = prime;
  out.period = orbit.period();

  const auto q = static_cast<std::uint32_t>(prime);
  const auto mul = static_cast<std::uint32_t>(mod_floor(to_int(cond.sign) * 4 * cond.a, prime));
  const auto add = static_cast<std::uint32_t>(mod_floor(cond.d * cond.d, prime));

  // nonresidue[v] = 1 iff (v | Q) = -1.
  std::vector<std::uint32_t> nonresidue(q, 1);
  nonresidue[0] = 0;
  for (std::uint64_t x = 1; x <= prime / 2; ++x) nonresidue[x * x % prime] = 0;

  std::vector<std::uint32_t> residues(out.period);
  if (orbit.has_tables()) {
    residues = orbit.f_table();
  } else {
    for (std::uint64_t r = 0; r < out.period; ++r) residues[r] = static_cast<std::uint32_t>(orbit.f(r));
  }
  kernels::affine_mod(residues, mul, add, q, residues);
  std::vector<std::uint8_t> flags(out.period);
  kernels::lookup(residues, nonresidue, flags);
  out.excluded = nonzero_positions(flags);
  return out;
}

SieveState refine(const SieveState& state, const StepResult& step, std::uint64_t modulus_cap) {
  const std::uint64_t modulus = checked_lcm(state.modulus, step.period, modulus_cap);

  std::vector<std::uint8_t> allowed_pattern(state.modulus, 0);
  for (std::uint64_t r : state.allowed) allowed_pattern.at(r) = 1;
  std::vector<std::uint8_t> keep_pattern(step.period, 1);
  for (std::uint64_t r : step.excluded) keep_pattern.at(r) = 0;

  std::vector<std::uint8_t> mask(modulus, 1);
  kernels::and_periodic(mask, allowed_pattern, 0);
  kernels::and_periodic(mask, keep_pattern, 0);
  return {modulus, nonzero_positions(mask)};
}

PipelineResult run_pipeline(const SquareCondition& cond, const std::vector<std::uint64_t>& primes,
                            std::uint64_t modulus_cap) {
  if (std::set<std::uint64_t>(primes.begin(), primes.end()).size() != primes.size())
    throw std::invalid_argument("sieve: primes must be distinct");
  for (std::uint64_t q : primes) require_odd_prime(q);

  std::vector<std::future<StepResult>> steps;
  steps.reserve(primes.size());
  for (std::uint64_t q : primes) steps.push_back(std::async(std::launch::async, step_excluded, cond, q));

  PipelineResult result;
  for (auto& pending : steps) {
    const StepResult step = pending.get();
    const SieveState next = refine(result.state, step, modulus_cap);
    const std::uint64_t lifted = result.state.allowed.size() * (next.modulus / result.state.modulus);
    result.trace.push_back({step.prime, step.period, step.excluded.size(), lifted - next.allowed.size(),
                            next.modulus, next.allowed.size()});
    result.state = next;
  }
  return result;
}

std::vector<std::uint64_t> reduce_modulo(const SieveState& state, std::uint64_t m) {
  if (m == 0 || state.modulus % m != 0)
    throw std::invalid_argument("reduce_modulo: " + std::to_string(m) + " does not divide " +
                                std::to_string(state.modulus));
  std::vector<std::uint64_t> out;
  out.reserve(state.allowed.size());
  for (std::uint64_t r : state.allowed) out.push_back(r % m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SieveState canonical_form(const SieveState& state) {
  if (state.allowed.empty()) return {1, {}};
  for (std::uint64_t m = 1; m <= state.modulus; ++m) {
    if (state.modulus % m != 0) continue;
    auto reduced = reduce_modulo(state, m);
    if (reduced.size() * (state.modulus / m) == state.allowed.size()) return {m, std::move(reduced)};
  }
  return state;
}

std::string describe(const SieveState& state) {
  const SieveState c = canonical_form(state);
  if (c.allowed.empty()) return "no residue class survives";
  if (c.modulus == 1) return "n unrestricted (mod 1)";
  std::ostringstream os;
  os << "n ≡ ";
  for (std::size_t i = 0; i < c.allowed.size(); ++i) os << (i ? ", " : "") << c.allowed[i];
  os << " (mod " << c.modulus << ")";
  return os.str();
}

std::vector<SearchHit> auto_search(const SquareCondition& cond, std::uint64_t prime_bound,
                                   const SieveState& state, std::uint64_t modulus_cap) {
  std::vector<SearchHit> hits;
  for (std::uint64_t q = 3; q <= prime_bound; q += 2) {
    if (!is_prime(q)) continue;
    const StepResult step = step_excluded(cond, q);
    SieveState next;
    try {
      next = refine(state, step, modulus_cap);
    } catch (const SieveCapError&) {
      continue;
    }
    const std::uint64_t lifted = state.allowed.size() * (next.modulus / state.modulus);
    if (lifted > next.allowed.size()) hits.push_back({q, lifted - next.allowed.size()});
  }
  return hits;
}

PlanError::PlanError(std::size_t line, const std::string& what)
    : std::runtime_error("plan line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<std::uint64_t> parse_plan(std::istream& in) {
  std::vector<std::uint64_t> primes;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view token(line.data() + first, last - first + 1);

    std::uint64_t q = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), q);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw PlanError(number, "expected a prime, got '" + std::string(token) + "'");
    if (q % 2 == 0 || !is_prime(q)) throw PlanError(number, std::to_string(q) + " is not an odd prime");
    primes.push_back(q);
  }
  return primes;
}

}  // namespace fibjac
