#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gact/odometer.hpp"

namespace gact {

struct Caps {
  std::size_t enumeration = 1000000;  // permutation group element cap
  std::size_t index = 100000;         // coset table cap
  std::size_t closure = 100000;       // subgroup closure cap
};

struct ShiftParams {
  int max_period = 10;
  int xh_period = 2;
  int window_min = 1;
  int window_max = 7;
  int holonomy_horizon = 5;
};

struct RunConfig {
  enum class Kind { Odometer, Shift } kind = Kind::Odometer;

  nlohmann::json echo;  // the validated document, echoed into reports

  // Odometer configs.
  std::optional<GroupFamily> family;
  std::vector<SubgroupSpec> chain;
  std::optional<SubgroupSpec> subgroup;  // H
  int depth = 0;
  int radius = 4;
  int evidence_levels = 3;

  Caps caps;
  std::uint64_t seed = 0;

  ShiftParams shift;

  GroupChain group_chain() const;
  LevelSystem build_levels(int depth_override = -1) const;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<std::string> violations;  // all schema violations, not just the first

  bool ok() const { return config.has_value(); }
};

// Parses and fully validates a JSON config document.
ParseResult parse_config(const std::string& text);

// Parses a subgroup spec document (used by --H files).
SubgroupSpec parse_subgroup_spec(const nlohmann::json& doc, const GroupFamily& family);

// Serialization helpers shared by reports and artifact files.
nlohmann::json element_to_json(const GroupElement& e);
nlohmann::json subgroup_spec_to_json(const SubgroupSpec& s);

}  // namespace gact
