#pragma once

// Replays every claim of the Fibonacci/Lucas Jacobi-criterion toolkit and
// collects the outcomes into a report: one JSON record per claim plus a
// summary record (schema/report.schema.json), and a plain-text table.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fibjac/sieve.hpp"

namespace fibjac {

enum class Profile { quick, full };
enum class ClaimStatus { pass, fail, skipped };

std::string_view to_string(Profile p) noexcept;
std::string_view to_string(ClaimStatus s) noexcept;

struct ClaimItem {
  std::string id;
  std::string locus;
  ClaimStatus status = ClaimStatus::skipped;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct VerificationReport {
  std::string version;
  std::string timestamp;  ///< ISO-8601 UTC
  Profile profile = Profile::quick;
  std::vector<ClaimItem> items;  ///< sorted by id

  std::size_t count(ClaimStatus s) const noexcept;
  bool passed() const noexcept { return count(ClaimStatus::fail) == 0; }
};

/// The prime list of the five-step square-exclusion argument for 4F(n) + 9.
const std::vector<std::uint64_t>& lemma2_primes();

/// Runs every claim group (concurrently) and assembles the sorted report.
VerificationReport verify_paper(Profile profile);

/// Line-delimited JSON: one record per claim, then the summary record.
std::string to_jsonl(const VerificationReport& report);

/// Human-readable summary table.
std::string summary_table(const VerificationReport& report);

std::string toolkit_version();

}  // namespace fibjac
