#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoimp/allocation.hpp"
#include "isoimp/base_solver.hpp"
#include "isoimp/envelopes.hpp"
#include "isoimp/maneuver.hpp"

namespace isoimp {

/// Parsed run configuration. File units are km, degrees, and days; the parsed
/// structure is already converted to internal units (km, rad, s).
struct RunConfig {
    CentralBody body = CentralBody::earth();
    ManeuverSpec spec;
    OptimizerConfig optimizer;

    int kappa = 0;
    int alpha_grid = 64;
    std::vector<int> family_caps = {3, 3, 3};
    std::optional<double> dv_max;  // [km/s]
    int close_ap = 1;
    int n0 = 0, nf = 0;
    std::vector<int> npf;

    std::string output_directory;
    std::string config_hash;  // FNV-1a of the canonical config text
};

/// Parse and validate a config document. Unknown keys are rejected with a
/// field path in the message.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& text);

nlohmann::json to_json(const StateVector& s);
nlohmann::json to_json(const Impulse& imp);
nlohmann::json to_json(const BaseSolution& sol);
nlohmann::json to_json(const SelectionVerdict& verdict);
nlohmann::json to_json(const FeasibleSpace& space);
nlohmann::json to_json(const SolutionFamily& family);
nlohmann::json to_json(const RealizedMember& member, const CentralBody& body);
nlohmann::json to_json(const Envelope& env);

BaseSolution base_solution_from_json(const nlohmann::json& j);

/// Trajectory sample rows (t_days, x, y, z [km]) along an impulse schedule.
std::string trajectory_csv(const ImpulseSchedule& sched, double trailing_coast,
                           int samples_per_arc, const CentralBody& body);

/// Lattice dump with one row per integer tuple of the bounding box:
/// sumN1, sumN2[, sumN3], feasible.
std::string feasible_space_csv(const FeasibleSpace& space);

std::string envelopes_csv(const std::vector<Envelope>& envelopes);

std::string primer_csv(const PrimerHistory& history);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace isoimp
