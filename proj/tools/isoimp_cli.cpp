// Command-line front end: base-solution search, feasibility analysis,
// iso-impulse member generation, solution envelopes, and diagnostics.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoimp/allocation.hpp"
#include "isoimp/base_solver.hpp"
#include "isoimp/circle_classifier.hpp"
#include "isoimp/envelopes.hpp"
#include "isoimp/errors.hpp"
#include "isoimp/lambert.hpp"
#include "isoimp/primer.hpp"
#include "isoimp/run_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace isoimp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNoConvergence = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
};

std::string resolve_out_dir(const RunConfig& cfg, const CommonArgs& args) {
    if (!args.out_dir.empty()) return args.out_dir;
    if (!cfg.output_directory.empty()) return cfg.output_directory;
    if (const char* env = std::getenv("ISOIMP_OUT_DIR")) return env;
    return ".";
}

RunConfig load(const CommonArgs& args) {
    RunConfig cfg = load_config(args.config_path);
    if (args.seed) cfg.optimizer.seed = *args.seed;
    return cfg;
}

void write_record(const std::string& dir, const std::string& name, const json& payload) {
    fs::create_directories(dir);
    write_text_file((fs::path(dir) / name).string(), payload.dump(2) + "\n");
    std::cout << (fs::path(dir) / name).string() << "\n";
}

json run_header(const RunConfig& cfg, double wall_seconds) {
    return {{"config_hash", cfg.config_hash},
            {"seed", cfg.optimizer.seed},
            {"restarts", cfg.optimizer.restarts},
            {"wall_seconds", wall_seconds}};
}

// Fixed-time two-impulse transfer between the configured departure and
// arrival points; scans both paths and up to four whole revolutions.
json lambert_baseline(const RunConfig& cfg) {
    if (!cfg.spec.mission_time || !cfg.spec.departure_ta || !cfg.spec.arrival_ta) {
        throw ConfigError("lambert baseline needs mission time and terminal phases");
    }
    OrbitElements oi = cfg.spec.initial_orbit;
    OrbitElements of = cfg.spec.target_orbit;
    oi.ta = *cfg.spec.departure_ta;
    of.ta = *cfg.spec.arrival_ta;
    const StateVector dep = elements_to_state(oi, cfg.body);
    const StateVector arr = elements_to_state(of, cfg.body);
    const double tof = *cfg.spec.mission_time;

    double best = std::numeric_limits<double>::infinity();
    json detail;
    for (int nrev = 0; nrev <= 4; ++nrev) {
        for (TransferPath path : {TransferPath::ShortWay, TransferPath::LongWay}) {
            std::vector<LambertArc> arcs;
            try {
                arcs = solve_lambert(dep.r, arr.r, tof, nrev, path, cfg.body);
            } catch (const std::exception&) {
                continue;
            }
            for (const LambertArc& arc : arcs) {
                const double dv = (arc.v1 - dep.v).norm() + (arr.v - arc.v2).norm();
                if (dv < best) {
                    best = dv;
                    detail = {{"dv_total_km_s", dv},
                              {"nrev", nrev},
                              {"path", path == TransferPath::ShortWay ? "short" : "long"},
                              {"dv1_km_s", (arc.v1 - dep.v).norm()},
                              {"dv2_km_s", (arr.v - arc.v2).norm()},
                              {"tof_days", tof / kSecondsPerDay}};
                }
            }
        }
    }
    if (!std::isfinite(best)) throw InfeasibleError("lambert baseline: no solution found");
    return detail;
}

int cmd_base(const CommonArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);

    json out;
    try {
        const BaseSolution two = solve_two_impulse(cfg.spec, cfg.body, cfg.optimizer);
        const BaseSolution three =
            solve_three_impulse(cfg.spec, cfg.body, cfg.optimizer, &two);
        const SelectionVerdict verdict = select_base(cfg.spec, two, three, cfg.body);
        out["two_impulse"] = to_json(two);
        out["three_impulse"] = to_json(three);
        out["verdict"] = to_json(verdict);
        if (verdict.chosen == ChosenBase::None && cfg.spec.departure_ta &&
            cfg.spec.arrival_ta) {
            out["verdict"]["suggestion"] = "lambert";
            out["lambert_baseline"] = lambert_baseline(cfg);
        }
    } catch (const ConfigError& e) {
        // identical orbits degenerate to the zero-impulse transfer
        const std::string msg = e.what();
        if (msg.find("identical") == std::string::npos) throw;
        out["verdict"] = {{"chosen", "none"},
                          {"rationale", "zero-dv-trivial"},
                          {"warning", "terminal orbits are identical; nothing to do"}};
    }
    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    out["run"] = run_header(cfg, wall);
    write_record(dir, "base.json", out);
    return kExitOk;
}

BaseSolution load_base(const std::string& path, const std::string& which) {
    const json doc = json::parse(read_text_file(path));
    if (!doc.contains(which)) {
        throw ConfigError("base record has no '" + which + "' entry");
    }
    return base_solution_from_json(doc[which]);
}

// which base to read from the record, preferring the verdict's choice
std::string pick_kind(const std::string& path, std::string requested) {
    if (!requested.empty()) {
        return requested == "two" ? "two_impulse" : "three_impulse";
    }
    const json doc = json::parse(read_text_file(path));
    if (doc.contains("verdict") && doc["verdict"].contains("chosen")) {
        if (doc["verdict"]["chosen"] == "two-impulse") return "two_impulse";
        if (doc["verdict"]["chosen"] == "three-impulse") return "three_impulse";
    }
    return doc.contains("three_impulse") ? "three_impulse" : "two_impulse";
}

TimeBudget budget_from(const RunConfig& cfg, const BaseSolution& base) {
    StateVector last = base.ap_states.back();
    last.v += base.impulses.back().dv;
    const double tf = period_from_state(last, cfg.body);
    const double mission =
        (cfg.spec.mission_time ? *cfg.spec.mission_time : base.coast_total()) +
        cfg.kappa * tf;
    return make_budget(mission, base, cfg.body, cfg.n0, cfg.nf, cfg.npf);
}

int cmd_feasible_space(const CommonArgs& args, const std::string& base_path,
                       const std::string& which, int n_aps) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);
    const BaseSolution base = load_base(base_path, pick_kind(base_path, which));
    const TimeBudget budget = budget_from(cfg, base);

    std::vector<AnchorPosition> anchors = anchors_from_base(base, cfg.body);
    if (n_aps > 0 && n_aps < static_cast<int>(anchors.size())) {
        anchors.resize(n_aps);
    }
    const FeasibleSpace space = enumerate_feasible_space(anchors, budget);

    json out;
    out["tof_p_days"] = budget.tof_p / kSecondsPerDay;
    out["space"] = to_json(space);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out["run"] = run_header(cfg, wall);
    write_record(dir, "feasible_space.json", out);
    write_text_file((fs::path(dir) / "feasible_space.csv").string(),
                    feasible_space_csv(space));
    return kExitOk;
}

SolutionFamily parse_family(const std::string& text, const TimeBudget& budget) {
    const json fam = json::parse(text);
    SolutionFamily family;
    family.n0 = budget.n0;
    family.nf = budget.nf;
    family.npf = budget.npf;
    family.per_ap = fam.at("per_ap").get<std::vector<std::vector<int>>>();
    return family;
}

int cmd_allocate(const CommonArgs& args, const std::string& base_path,
                 const std::string& which, const std::string& family_text) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);
    const BaseSolution base = load_base(base_path, pick_kind(base_path, which));
    const TimeBudget budget = budget_from(cfg, base);
    const std::vector<AnchorPosition> anchors = anchors_from_base(base, cfg.body);

    json out;
    std::vector<RealizedMember> members;
    if (cfg.dv_max) {
        const SplitOutcome split =
            split_for_dv_max(base, anchors, budget, *cfg.dv_max, cfg.body);
        if (!split.feasible) {
            std::cerr << "allocation infeasible for dv_max=" << *cfg.dv_max
                      << " km/s within the budget; tof_p_days="
                      << budget.tof_p / kSecondsPerDay << "\n";
            return kExitInfeasible;
        }
        out["kappa_used"] = split.kappa_suggestion;
        if (split.member) members.push_back(*split.member);
    } else {
        const SolutionFamily family = parse_family(family_text, budget);
        // feasibility diagnostic with this family's totals
        std::vector<int> skeleton;
        for (std::size_t i = 0; i < family.per_ap.size(); ++i) {
            skeleton.push_back(std::max(1, family.sum_at(static_cast<int>(i))));
        }
        members = sample_members(family, base, anchors, budget, cfg.alpha_grid,
                                 cfg.body, cfg.close_ap);
        if (members.empty()) {
            const FeasibilityBounds diag = feasibility_bounds(anchors, budget);
            std::cerr << "family infeasible: no member satisfies the time equality;"
                      << " tof_p_days=" << budget.tof_p / kSecondsPerDay << "\n";
            if (diag.feasible) {
                for (std::size_t i = 0; i < diag.per_ap.size(); ++i) {
                    std::cerr << "  sumN" << i + 1 << " in [" << diag.per_ap[i].first
                              << ", " << diag.per_ap[i].second << "]\n";
                }
            }
            return kExitInfeasible;
        }
    }

    out["members"] = json::array();
    for (const RealizedMember& m : members) {
        out["members"].push_back(to_json(m, cfg.body));
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out["run"] = run_header(cfg, wall);
    write_record(dir, "members.json", out);
    if (!members.empty()) {
        StateVector last = base.ap_states.back();
        last.v += base.impulses.back().dv;
        const double tf = period_from_state(last, cfg.body);
        const double trailing = base.t_c2 + budget.nf * tf;
        write_text_file((fs::path(dir) / "trajectory.csv").string(),
                        trajectory_csv(members.front().assembled.schedule,
                                       std::max(trailing, 1.0), 240, cfg.body));
    }
    return kExitOk;
}

int cmd_envelope(const CommonArgs& args, const std::string& base_path,
                 const std::string& which, const std::string& family_text,
                 bool lp_verify) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);
    const BaseSolution base = load_base(base_path, pick_kind(base_path, which));
    const TimeBudget budget = budget_from(cfg, base);
    const std::vector<AnchorPosition> anchors = anchors_from_base(base, cfg.body);
    const SolutionFamily family = parse_family(family_text, budget);

    const EnvelopeProblem prob = make_envelope_problem(family, anchors, budget);
    const std::vector<Envelope> envelopes = envelope_corners(prob);
    if (envelopes.empty()) {
        std::cerr << "family is not time-feasible; no envelopes\n";
        return kExitInfeasible;
    }

    json out;
    out["t11_max_days"] = envelope_t11_max(prob) / kSecondsPerDay;
    out["envelopes"] = json::array();
    for (const Envelope& env : envelopes) out["envelopes"].push_back(to_json(env));
    if (lp_verify) {
        const EnvelopeVerification report = verify_envelopes(prob, envelopes);
        out["lp_verification"] = {{"corners_checked", report.corners_checked},
                                  {"mismatches", report.mismatches}};
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out["run"] = run_header(cfg, wall);
    write_record(dir, "envelopes.json", out);
    write_text_file((fs::path(dir) / "envelopes.csv").string(), envelopes_csv(envelopes));
    return kExitOk;
}

int cmd_classify_circle(double beta, double inc_deg) {
    const double inc = inc_deg * M_PI / 180.0;
    const CircleDv two = circle_dv_two_impulse(beta, inc);
    const CircleDv three = circle_dv_three_impulse(beta, inc);
    const CircleDv bp = circle_dv_biparabolic(beta);
    json out;
    out["beta"] = beta;
    out["inc_deg"] = inc_deg;
    out["label"] = to_string(classify_circle_transfer(beta, inc));
    out["dv_normalized"] = {{"two_impulse", two.dv},
                            {"three_impulse", three.dv},
                            {"bi_parabolic", bp.dv}};
    out["three_impulse_apex_ratio"] = three.apex_ratio;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_lambert(const CommonArgs& args) {
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);
    json out;
    out["lambert_baseline"] = lambert_baseline(cfg);
    out["run"] = run_header(cfg, 0.0);
    write_record(dir, "lambert.json", out);
    return kExitOk;
}

int cmd_primer_check(const CommonArgs& args, const std::string& base_path,
                     const std::string& which, int samples) {
    RunConfig cfg = load(args);
    const std::string dir = resolve_out_dir(cfg, args);
    const BaseSolution base = load_base(base_path, pick_kind(base_path, which));
    const PrimerHistory hist = primer_history(base, samples, cfg.body);

    json out;
    out["extremal"] = hist.extremal;
    out["max_interior"] = hist.max_interior;
    out["violation_times_days"] = json::array();
    for (double t : hist.violation_times) {
        out["violation_times_days"].push_back(t / kSecondsPerDay);
    }
    out["run"] = run_header(cfg, 0.0);
    write_record(dir, "primer.json", out);
    write_text_file((fs::path(dir) / "primer.csv").string(), primer_csv(hist));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-impulse transfer design and iso-impulse solution spaces"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string base_path, which, family_text;
    bool lp_verify = false;
    int n_aps = 0;
    int samples = 400;
    double beta = 1.0, inc_deg = 0.0;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        auto* opt = cmd->add_option("--config", common.config_path, "run configuration file");
        if (needs_config) opt->required();
        cmd->add_option("--out", common.out_dir, "output directory");
        cmd->add_option("--seed", common.seed, "override the optimizer seed");
        cmd->add_option("--format", common.format, "json|csv");
    };

    CLI::App* base = app.add_subcommand("base", "solve and select the base solutions");
    add_common(base);

    CLI::App* fspace = app.add_subcommand("feasible-space",
                                          "enumerate the feasible revolution tuples");
    add_common(fspace);
    fspace->add_option("--base", base_path, "base record from 'base'")->required();
    fspace->add_option("--kind", which, "two|three (default: the verdict's choice)");
    fspace->add_option("--aps", n_aps, "restrict to the first N anchor positions");

    CLI::App* alloc = app.add_subcommand("allocate", "realize iso-impulse members");
    add_common(alloc);
    alloc->add_option("--base", base_path, "base record from 'base'")->required();
    alloc->add_option("--kind", which, "two|three (default: the verdict's choice)");
    alloc->add_option("--family", family_text, "family spec, e.g. {\"per_ap\":[[1,1],[1]]}");

    CLI::App* env = app.add_subcommand("envelope", "solution-envelope polygons");
    add_common(env);
    env->add_option("--base", base_path, "base record from 'base'")->required();
    env->add_option("--kind", which, "two|three (default: the verdict's choice)");
    env->add_option("--family", family_text, "family spec")->required();
    env->add_flag("--lp-verify", lp_verify, "verify corners against the LP oracle");

    CLI::App* classify = app.add_subcommand("classify-circle",
                                            "circle-to-circle maneuver classification");
    classify->add_option("--beta", beta, "r0/rf in (0, 1]")->required();
    classify->add_option("--inc-deg", inc_deg, "plane change [deg]")->required();

    CLI::App* lam = app.add_subcommand("lambert", "fixed-time two-impulse baseline");
    add_common(lam);

    CLI::App* primer = app.add_subcommand("primer-check", "primer magnitude history");
    add_common(primer);
    primer->add_option("--base", base_path, "base record from 'base'")->required();
    primer->add_option("--kind", which, "two|three (default: the verdict's choice)");
    primer->add_option("--samples", samples, "samples per arc");

    CLI11_PARSE(app, argc, argv);

    try {
        if (base->parsed()) return cmd_base(common);
        if (fspace->parsed()) return cmd_feasible_space(common, base_path, which, n_aps);
        if (alloc->parsed()) return cmd_allocate(common, base_path, which, family_text);
        if (env->parsed()) return cmd_envelope(common, base_path, which, family_text,
                                               lp_verify);
        if (classify->parsed()) return cmd_classify_circle(beta, inc_deg);
        if (lam->parsed()) return cmd_lambert(common);
        if (primer->parsed()) return cmd_primer_check(common, base_path, which, samples);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}
