// Batch front end: parses a JSON config, dispatches an analysis or
// construction, writes a byte-stable JSON report.
//
// Exit codes: 0 = no EXACT-FAIL, 1 = at least one EXACT-FAIL, 2 = config or
// usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gact/error.hpp"
#include "gact/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gact::ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gact::RunConfig load_config(const std::string& config_path, const std::string& h_path,
                            int depth, int radius, long long cap, long long seed) {
  gact::ParseResult parsed = gact::parse_config(read_file(config_path));
  if (!parsed.ok()) {
    std::ostringstream os;
    os << "config validation failed:";
    for (const auto& v : parsed.violations) os << "\n  - " << v;
    throw gact::ConfigError(os.str());
  }
  gact::RunConfig cfg = std::move(*parsed.config);
  if (!h_path.empty()) {
    if (!cfg.family) throw gact::ConfigError("--H needs an odometer config");
    auto doc = nlohmann::json::parse(read_file(h_path), nullptr, false);
    if (doc.is_discarded()) throw gact::ConfigError("--H file is not valid JSON");
    cfg.subgroup = gact::parse_subgroup_spec(doc, *cfg.family);
  }
  if (depth >= 0) {
    if (depth > static_cast<int>(cfg.chain.size()))
      throw gact::ConfigError("--depth exceeds the chain length");
    cfg.depth = depth;
  }
  if (radius >= 0) cfg.radius = radius;
  if (cap > 0) {
    cfg.caps.enumeration = static_cast<std::size_t>(cap);
    cfg.caps.index = static_cast<std::size_t>(cap);
    cfg.caps.closure = static_cast<std::size_t>(cap);
  }
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  return cfg;
}

void write_output(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw gact::ConfigError("cannot write file: " + path);
  out << doc.dump(2) << "\n";
}

int finish(const gact::Report& report, const std::string& output_path) {
  std::cout << report.to_text();
  if (!output_path.empty()) write_output(output_path, report.to_json());
  return report.exit_code();
}

// Parses "A..B" or a single level number; returns B (the deepest level).
int parse_levels(const std::string& levels) {
  if (levels.empty()) return -1;
  auto dots = levels.find("..");
  std::string upper = dots == std::string::npos ? levels : levels.substr(dots + 2);
  try {
    return std::stoi(upper);
  } catch (const std::exception&) {
    throw gact::ConfigError("cannot parse --levels value: " + levels);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group actions with almost-normal finite stabilizers: exact analyses"};
  app.require_subcommand(1);

  std::string config_path, h_path, output_path, levels;
  int depth = -1, radius = -1, level = -1;
  long long cap = -1, seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config JSON path")->required();
    cmd->add_option("--output", output_path, "report JSON path");
    cmd->add_option("--cap", cap, "enumeration/index/closure cap");
    cmd->add_option("--seed", seed, "seed for sampled property checks");
  };

  CLI::App* odometer = app.add_subcommand("odometer", "odometer truncation analyses");
  CLI::App* analyze = odometer->add_subcommand("analyze", "build and audit a truncation");
  add_common(analyze);
  analyze->add_option("--depth", depth, "truncation depth");
  analyze->add_option("--radius", radius, "stabilizer ball radius");

  CLI::App* subgroup = app.add_subcommand("subgroup", "subgroup analyses");
  CLI::App* sub_report = subgroup->add_subcommand("report", "almost-normality report");
  add_common(sub_report);
  sub_report->add_option("--H", h_path, "subgroup spec JSON path");
  sub_report->add_option("--levels", levels, "level range, e.g. 1..5");

  CLI::App* factor = app.add_subcommand("factor", "quotient factor construction");
  CLI::App* factor_build = factor->add_subcommand("build", "build the |H|-to-one factor");
  add_common(factor_build);
  factor_build->add_option("--H", h_path, "subgroup spec JSON path");
  factor_build->add_option("--level", level, "chain level of the source system");

  CLI::App* extend = app.add_subcommand("extend", "free extension construction");
  CLI::App* extend_build = extend->add_subcommand("build", "build the free extension");
  add_common(extend_build);
  extend_build->add_option("--H", h_path, "subgroup spec JSON path");
  extend_build->add_option("--level", level, "chain level of the factor");
  std::string gamma = "auto";
  extend_build->add_option("--gamma", gamma, "free complement selection (auto)");

  CLI::App* verify = app.add_subcommand("verify", "verification batteries");
  CLI::App* verify_all = verify->add_subcommand("all", "run the full battery");
  add_common(verify_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      gact::RunConfig cfg = load_config(config_path, "", depth, radius, cap, seed);
      return finish(gact::run_odometer_analyze(cfg), output_path);
    }
    if (*sub_report) {
      gact::RunConfig cfg = load_config(config_path, h_path, -1, -1, cap, seed);
      return finish(gact::run_subgroup_report(cfg, parse_levels(levels)), output_path);
    }
    if (*factor_build) {
      gact::RunConfig cfg = load_config(config_path, h_path, -1, -1, cap, seed);
      nlohmann::json artifact;
      gact::Report report = gact::run_factor_build(cfg, level, &artifact);
      std::cout << report.to_text();
      if (!output_path.empty()) write_output(output_path, artifact);
      return report.exit_code();
    }
    if (*extend_build) {
      if (gamma != "auto") throw gact::ConfigError("only --gamma auto is supported");
      gact::RunConfig cfg = load_config(config_path, h_path, -1, -1, cap, seed);
      nlohmann::json artifact;
      gact::Report report = gact::run_extend_build(cfg, level, &artifact);
      std::cout << report.to_text();
      if (!output_path.empty()) write_output(output_path, artifact);
      return report.exit_code();
    }
    if (*verify_all) {
      gact::RunConfig cfg = load_config(config_path, "", -1, -1, cap, seed);
      return finish(gact::run_verify_all(cfg), output_path);
    }
  } catch (const gact::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
