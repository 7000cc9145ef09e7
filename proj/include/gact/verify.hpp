#pragma once

#include "gact/config.hpp"
#include "gact/pipeline.hpp"
#include "gact/report.hpp"
#include "gact/shift.hpp"

namespace gact {

// `odometer analyze`: builds the truncation and reports structure,
// transitivity, exact cylinder measures and the basepoint stabilizer ball.
Report run_odometer_analyze(const RunConfig& cfg, int depth_override = -1,
                            int radius_override = -1);

// `subgroup report`: almost-normality verdict for H with certificate or
// per-level conjugate growth, plus holonomy probes of H's elements at the
// basepoint cylinder.
Report run_subgroup_report(const RunConfig& cfg, int max_level = -1);

// `factor build`: the quotient-factor construction at a level; optionally
// emits the built system as a JSON artifact.
Report run_factor_build(const RunConfig& cfg, int level,
                        nlohmann::json* artifact = nullptr);

// `extend build`: free complement search and the orbit extension over the
// factor; optionally emits the built system as a JSON artifact.
Report run_extend_build(const RunConfig& cfg, int level,
                        nlohmann::json* artifact = nullptr);

// `verify all`: the full battery for a bundled config (odometer or shift).
Report run_verify_all(const RunConfig& cfg);

// Serialization of a finite system for artifact files.
nlohmann::json gset_to_json(const FiniteGSet& system);
nlohmann::json subgroup_handle_to_json(const SubgroupHandle& sub);

}  // namespace gact
