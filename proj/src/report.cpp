#include "gact/report.hpp"

#include <sstream>

namespace gact {

const char* CheckRecord::verdict_string(Verdict v) {
  switch (v) {
    case Verdict::ExactPass:
      return "EXACT-PASS";
    case Verdict::ExactFail:
      return "EXACT-FAIL";
    case Verdict::Evidence:
      return "EVIDENCE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

void Report::exact(const std::string& name, const std::string& anchor, bool pass,
                   nlohmann::json data, nlohmann::json trace) {
  CheckRecord r;
  r.name = name;
  r.anchor = anchor;
  r.verdict = pass ? CheckRecord::Verdict::ExactPass : CheckRecord::Verdict::ExactFail;
  r.data = std::move(data);
  r.trace = std::move(trace);
  records.push_back(std::move(r));
}

void Report::evidence(const std::string& name, const std::string& anchor,
                      nlohmann::json data) {
  CheckRecord r;
  r.name = name;
  r.anchor = anchor;
  r.verdict = CheckRecord::Verdict::Evidence;
  r.data = std::move(data);
  records.push_back(std::move(r));
}

void Report::inconclusive(const std::string& name, const std::string& anchor,
                          nlohmann::json data) {
  CheckRecord r;
  r.name = name;
  r.anchor = anchor;
  r.verdict = CheckRecord::Verdict::Inconclusive;
  r.data = std::move(data);
  records.push_back(std::move(r));
}

bool Report::has_exact_fail() const {
  for (const auto& r : records)
    if (r.verdict == CheckRecord::Verdict::ExactFail) return true;
  return false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json rec{{"name", r.name},
                       {"anchor", r.anchor},
                       {"verdict", CheckRecord::verdict_string(r.verdict)},
                       {"data", r.data}};
    if (!r.trace.is_null()) rec["trace"] = r.trace;
    recs.push_back(std::move(rec));
  }
  return nlohmann::json{{"schema", 1},
                        {"composition", "right-to-left"},
                        {"command", command},
                        {"config", config_echo},
                        {"records", recs},
                        {"exit_code", exit_code()}};
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& r : records)
    os << "[" << CheckRecord::verdict_string(r.verdict) << "] " << r.name << " ("
       << r.anchor << ")\n";
  return os.str();
}

}  // namespace gact
