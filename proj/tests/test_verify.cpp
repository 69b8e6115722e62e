#include <doctest.h>

#include <map>
#include <sstream>

#include <json.hpp>

#include "fibjac/verify.hpp"

using namespace fibjac;
using nlohmann::json;

namespace {

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

const VerificationReport& quick_report() {
  static const VerificationReport r = verify_paper(Profile::quick);
  return r;
}

}  // namespace

TEST_CASE("quick profile passes every claim") {
  const VerificationReport& r = quick_report();
  for (const ClaimItem& item : r.items) {
    CAPTURE(item.id);
    CHECK(item.status == ClaimStatus::pass);
  }
  CHECK(r.passed());
  CHECK(r.count(ClaimStatus::fail) == 0);
  CHECK(r.version == toolkit_version());
}

TEST_CASE("every claim id appears once, in sorted order") {
  const std::vector<std::string> expected = {
      "identities",   "lemma1",       "lemma2",         "lemma2.step1", "lemma2.step2", "lemma2.step3",
      "lemma2.step4", "lemma2.step5", "lemma3",         "lemma4",       "nu7",          "pisano",
      "theorem1",     "theorem2",     "theorem2.cases", "theorem2.w3"};
  std::vector<std::string> ids;
  for (const ClaimItem& item : quick_report().items) ids.push_back(item.id);
  CHECK(ids == expected);
}

TEST_CASE("lemma4 item covers the whole table") {
  for (const ClaimItem& item : quick_report().items) {
    if (item.id != "lemma4") continue;
    CHECK(item.details["comparisons"] == 64);
    CHECK(item.details["mismatches"] == 0);
    CHECK(item.details["period_mod_67"] == 136);
  }
}

TEST_CASE("case 2 exponent note") {
  for (const ClaimItem& item : quick_report().items) {
    if (item.id != "theorem2.cases") continue;
    CHECK(item.details["note"].get<std::string>().find("5^3") != std::string::npos);
  }
}

TEST_CASE("jsonl: one record per claim plus a summary") {
  const VerificationReport& r = quick_report();
  const auto lines = parse_lines(to_jsonl(r));
  REQUIRE(lines.size() == r.items.size() + 1);
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    CHECK(lines[i]["record"] == "claim");
    CHECK(lines[i]["id"] == r.items[i].id);
  }
  const json& summary = lines.back();
  CHECK(summary["record"] == "summary");
  CHECK(summary["claims"] == r.items.size());
  CHECK(summary["status"] == "pass");
  CHECK(summary["profile"] == "quick");
}

TEST_CASE("jsonl is reproducible apart from the timestamp") {
  VerificationReport a = quick_report();
  VerificationReport b = verify_paper(Profile::quick);
  b.timestamp = a.timestamp;
  CHECK(to_jsonl(a) == to_jsonl(b));
}

TEST_CASE("summary table lists every claim") {
  const VerificationReport& r = quick_report();
  const std::string table = summary_table(r);
  for (const ClaimItem& item : r.items) CHECK(table.find(item.id) != std::string::npos);
}

TEST_CASE("failing claim turns the summary to fail") {
  VerificationReport r = quick_report();
  r.items.front().status = ClaimStatus::fail;
  CHECK_FALSE(r.passed());
  const auto lines = parse_lines(to_jsonl(r));
  CHECK(lines.back()["status"] == "fail");
  CHECK(lines.back()["fail"] == 1);
}
