#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gact {

// One verification record. EXACT verdicts state facts about the finite
// system at hand; EVIDENCE marks truncation trends standing in for limit
// statements; INCONCLUSIVE marks cap exhaustion or horizons too short to
// decide. Every EXACT-FAIL carries a replayable counterexample in `trace`.
struct CheckRecord {
  enum class Verdict { ExactPass, ExactFail, Evidence, Inconclusive };

  std::string name;
  std::string anchor;  // which statement the check instantiates
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::json data;
  nlohmann::json trace;

  static const char* verdict_string(Verdict v);
};

struct Report {
  std::string command;
  nlohmann::json config_echo;
  std::vector<CheckRecord> records;

  void add(CheckRecord record) { records.push_back(std::move(record)); }
  void exact(const std::string& name, const std::string& anchor, bool pass,
             nlohmann::json data = nlohmann::json::object(),
             nlohmann::json trace = nlohmann::json());
  void evidence(const std::string& name, const std::string& anchor,
                nlohmann::json data = nlohmann::json::object());
  void inconclusive(const std::string& name, const std::string& anchor,
                    nlohmann::json data = nlohmann::json::object());

  bool has_exact_fail() const;
  int exit_code() const { return has_exact_fail() ? 1 : 0; }

  // Byte-stable rendering: keys sorted, no timestamps, exact rationals as
  // "p/q" strings.
  nlohmann::json to_json() const;
  std::string to_text() const;  // one line per record
};

}  // namespace gact
