#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gact/error.hpp"
#include "gact/verify.hpp"

using namespace gact;

namespace {

const char* kDihedralConfig = R"({
  "schema": 1,
  "kind": "odometer",
  "family": {"type": "dihedral_infinite"},
  "chain": [{"dihedral_power": 1}, {"dihedral_power": 2},
            {"dihedral_power": 3}, {"dihedral_power": 4}],
  "H": {"words": [["b"]]},
  "depth": 4,
  "radius": 4,
  "seed": 1
})";

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("empty document: a violation list, no config") {
    ParseResult r = parse_config("");
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.violations.empty());
  }

  SUBCASE("dihedral sample config is valid") {
    ParseResult r = parse_config(kDihedralConfig);
    REQUIRE(r.ok());
    CHECK(r.config->kind == RunConfig::Kind::Odometer);
    CHECK(r.config->depth == 4);
    CHECK(r.config->radius == 4);
    CHECK(r.config->chain.size() == 4);
    CHECK(r.config->subgroup.has_value());
  }

  SUBCASE("negative depth is a named violation") {
    std::string text = kDihedralConfig;
    text.replace(text.find("\"depth\": 4"), 10, "\"depth\": -1");
    ParseResult r = parse_config(text);
    CHECK_FALSE(r.ok());
    bool found = false;
    for (const auto& v : r.violations)
      if (v.find("depth >= 0") != std::string::npos) found = true;
    CHECK(found);
  }

  SUBCASE("multiple violations are all collected") {
    ParseResult r = parse_config(R"({"schema": 2, "kind": "nope"})");
    CHECK_FALSE(r.ok());
    CHECK(r.violations.size() >= 2);
  }

  SUBCASE("unknown family is rejected") {
    ParseResult r = parse_config(
        R"({"schema": 1, "kind": "odometer", "family": {"type": "lamplighter"}})");
    CHECK_FALSE(r.ok());
  }
}

TEST_CASE("reports") {
  SUBCASE("exit code semantics") {
    Report rep;
    rep.exact("ok", "anchor", true);
    CHECK(rep.exit_code() == 0);
    rep.evidence("trend", "anchor");
    rep.inconclusive("cap", "anchor");
    CHECK(rep.exit_code() == 0);
    rep.exact("bad", "anchor", false, {}, nlohmann::json{{"counterexample", 1}});
    CHECK(rep.exit_code() == 1);
  }

  SUBCASE("subgroup report on the dihedral sample: EVIDENCE, exit 0") {
    ParseResult r = parse_config(kDihedralConfig);
    REQUIRE(r.ok());
    Report rep = run_subgroup_report(*r.config);
    CHECK(rep.exit_code() == 0);
    bool evidence_verdict = false;
    for (const auto& rec : rep.records)
      if (rec.name == "almost-normality" &&
          rec.verdict == CheckRecord::Verdict::Evidence)
        evidence_verdict = true;
    CHECK(evidence_verdict);
  }

  SUBCASE("identical configs give byte-identical reports") {
    ParseResult r1 = parse_config(kDihedralConfig);
    ParseResult r2 = parse_config(kDihedralConfig);
    REQUIRE(r1.ok());
    REQUIRE(r2.ok());
    Report a = run_verify_all(*r1.config);
    Report b = run_verify_all(*r2.config);
    CHECK(a.to_json().dump(2) == b.to_json().dump(2));
    CHECK(a.to_text() == b.to_text());
  }

  SUBCASE("every numeric report value is an integer or a p/q string") {
    ParseResult r = parse_config(kDihedralConfig);
    REQUIRE(r.ok());
    Report rep = run_verify_all(*r.config);
    // Spot check the measure rendering.
    bool found_measures = false;
    for (const auto& rec : rep.records) {
      if (rec.name != "cylinder-measures") continue;
      found_measures = true;
      for (const auto& v : rec.data.at("basepoint_cylinder_measure_per_level")) {
        std::string s = v.get<std::string>();
        CHECK(s.find('/') != std::string::npos);
        CHECK(s.find('.') == std::string::npos);
      }
    }
    CHECK(found_measures);
  }
}

TEST_CASE("analyze and build commands surface their preconditions") {
  ParseResult r = parse_config(kDihedralConfig);
  REQUIRE(r.ok());

  SUBCASE("factor build without a certificate is inconclusive, not fatal") {
    Report rep = run_factor_build(*r.config, 2, nullptr);
    CHECK(rep.exit_code() == 0);
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].verdict == CheckRecord::Verdict::Inconclusive);
  }

  SUBCASE("shift commands reject odometer-only operations") {
    ParseResult s = parse_config(R"({"schema": 1, "kind": "shift"})");
    REQUIRE(s.ok());
    CHECK_THROWS_AS(run_odometer_analyze(*s.config), ConfigError);
    CHECK_THROWS_AS(run_subgroup_report(*s.config), ConfigError);
  }

  SUBCASE("index cap exhaustion is an INCONCLUSIVE record, exit 0") {
    std::string text = kDihedralConfig;
    text.insert(text.rfind('}'), R"(, "caps": {"index": 4})");
    ParseResult capped = parse_config(text);
    REQUIRE(capped.ok());
    Report rep = run_verify_all(*capped.config);
    CHECK(rep.exit_code() == 0);
    REQUIRE_FALSE(rep.records.empty());
    CHECK(rep.records[0].name == "level-construction");
    CHECK(rep.records[0].verdict == CheckRecord::Verdict::Inconclusive);
  }
}
