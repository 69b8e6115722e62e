#pragma once

// Modular square-exclusion sieve for T(n) = sign*4a F(n) + d^2.
//
// If T(n) is a perfect square then (T(n) | Q) != -1 for every odd prime Q.
// F is periodic modulo Q, so each Q rules out whole residue classes of n
// modulo its period; refine() intersects those constraints over the lcm of
// the periods.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibjac/arith.hpp"
#include "fibjac/criterion.hpp"
#include "fibjac/recurrences.hpp"

namespace fibjac {

struct SquareCondition {
  Integer a = 1;
  Integer d = 3;
  Sign sign = Sign::plus;
  RecurrenceParams params{1};

  /// Exact T(n).
  Integer value(std::uint64_t n) const;
};

struct StepResult {
  std::uint64_t prime = 0;
  std::uint64_t period = 0;
  /// Sorted residues r in [0, period) with (T(r) | prime) = -1.
  std::vector<std::uint64_t> excluded;
};

struct SieveState {
  std::uint64_t modulus = 1;
  /// Sorted residues in [0, modulus).
  std::vector<std::uint64_t> allowed{0};

  friend bool operator==(const SieveState&, const SieveState&) = default;
};

class SieveCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultModulusCap = 10'000'000;

/// Throws std::invalid_argument for even or composite Q.
StepResult step_excluded(const SquareCondition& cond, std::uint64_t prime);

/// Throws SieveCapError when lcm(modulus, period) exceeds `modulus_cap`.
SieveState refine(const SieveState& state, const StepResult& step,
                  std::uint64_t modulus_cap = kDefaultModulusCap);

struct TraceRecord {
  std::uint64_t prime = 0;
  std::uint64_t period = 0;
  std::uint64_t excluded = 0;  ///< residues excluded modulo the period
  std::uint64_t removed = 0;   ///< previously allowed classes this step eliminated
  std::uint64_t modulus = 0;   ///< after the step
  std::uint64_t allowed = 0;   ///< after the step
};

struct PipelineResult {
  SieveState state;
  std::vector<TraceRecord> trace;
};

/// Folds refine() over the primes in order. Primes must be odd, prime and distinct.
PipelineResult run_pipeline(const SquareCondition& cond, const std::vector<std::uint64_t>& primes,
                            std::uint64_t modulus_cap = kDefaultModulusCap);

/// Allowed residues reduced modulo `m`; m must divide state.modulus.
std::vector<std::uint64_t> reduce_modulo(const SieveState& state, std::uint64_t m);

/// Equivalent state with the smallest modulus dividing state.modulus.
SieveState canonical_form(const SieveState& state);

/// "n ≡ 0 (mod 2800)", "n ≡ 0, 4 (mod 8)", "n unrestricted (mod 1)" or
/// "no residue class survives".
std::string describe(const SieveState& state);

struct SearchHit {
  std::uint64_t prime = 0;
  std::uint64_t gain = 0;  ///< allowed residues the step would remove
};

/// Odd primes Q <= prime_bound whose step would remove at least one allowed
/// residue of `state`. Primes whose period pushes the modulus past the cap are skipped.
std::vector<SearchHit> auto_search(const SquareCondition& cond, std::uint64_t prime_bound,
                                   const SieveState& state,
                                   std::uint64_t modulus_cap = kDefaultModulusCap);

class PlanError : public std::runtime_error {
 public:
  PlanError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Sieve plan: one odd prime per line, '#' starts a comment, blank lines ignored.
std::vector<std::uint64_t> parse_plan(std::istream& in);

}  // namespace fibjac
