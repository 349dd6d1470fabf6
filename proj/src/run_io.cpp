#include "isoimp/run_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"

namespace isoimp {

namespace {

using nlohmann::json;

constexpr double kDeg = M_PI / 180.0;

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("config: unknown key '" + path + it.key() + "'");
        }
    }
}

double need_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ConfigError("config: missing or non-numeric field '" + path + key + "'");
    }
    return obj[key].get<double>();
}

OrbitElements parse_orbit(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError("config: '" + path + "' must be an object");
    require_keys(obj, path + ".", {"a_km", "e", "inc_deg", "raan_deg", "argp_deg", "ta_deg"});
    OrbitElements el;
    el.a = need_number(obj, path + ".", "a_km");
    el.e = need_number(obj, path + ".", "e");
    el.inc = need_number(obj, path + ".", "inc_deg") * kDeg;
    el.raan = need_number(obj, path + ".", "raan_deg") * kDeg;
    el.argp = need_number(obj, path + ".", "argp_deg") * kDeg;
    el.ta = obj.contains("ta_deg") ? obj["ta_deg"].get<double>() * kDeg : 0.0;
    if (!(el.a > 0.0) || el.e < 0.0 || el.e >= 1.0) {
        throw ConfigError("config: '" + path + "' must describe an elliptic orbit");
    }
    return el;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    require_keys(root, "",
                 {"body", "initial_orbit", "target_orbit", "maneuver", "optimizer",
                  "allocation", "output"});

    RunConfig cfg;

    if (root.contains("body")) {
        const json& b = root["body"];
        require_keys(b, "body.", {"preset", "mu_km3_s2", "length_unit_km"});
        if (b.contains("preset")) {
            const std::string preset = b["preset"].get<std::string>();
            if (preset == "earth") {
                cfg.body = CentralBody::earth();
            } else if (preset == "sun") {
                cfg.body = CentralBody::sun();
            } else {
                throw ConfigError("config: body.preset must be 'earth' or 'sun'");
            }
        }
        if (b.contains("mu_km3_s2")) cfg.body.mu = b["mu_km3_s2"].get<double>();
        if (b.contains("length_unit_km")) {
            cfg.body.length_unit_km = b["length_unit_km"].get<double>();
        }
        if (!(cfg.body.mu > 0.0) || !(cfg.body.length_unit_km > 0.0)) {
            throw ConfigError("config: body parameters must be positive");
        }
    }

    if (!root.contains("initial_orbit") || !root.contains("target_orbit")) {
        throw ConfigError("config: initial_orbit and target_orbit are required");
    }
    cfg.spec.initial_orbit = parse_orbit(root["initial_orbit"], "initial_orbit");
    cfg.spec.target_orbit = parse_orbit(root["target_orbit"], "target_orbit");

    if (root.contains("maneuver")) {
        const json& m = root["maneuver"];
        require_keys(m, "maneuver.",
                     {"class", "mission_time_days", "departure_ta_deg", "arrival_ta_deg",
                      "allow_relaxed_time"});
        const std::string cls = m.contains("class") ? m["class"].get<std::string>()
                                                    : "time-free-transfer";
        if (cls == "time-free-transfer") {
            cfg.spec.maneuver_class = ManeuverClass::TimeFreeTransfer;
        } else if (cls == "time-free-rendezvous") {
            cfg.spec.maneuver_class = ManeuverClass::TimeFreeRendezvous;
        } else if (cls == "time-fixed-rendezvous") {
            cfg.spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
        } else {
            throw ConfigError("config: maneuver.class '" + cls + "' is not recognized");
        }
        if (m.contains("mission_time_days")) {
            cfg.spec.mission_time = m["mission_time_days"].get<double>() * kSecondsPerDay;
        }
        if (m.contains("departure_ta_deg")) {
            cfg.spec.departure_ta = m["departure_ta_deg"].get<double>() * kDeg;
        }
        if (m.contains("arrival_ta_deg")) {
            cfg.spec.arrival_ta = m["arrival_ta_deg"].get<double>() * kDeg;
        }
        if (m.contains("allow_relaxed_time")) {
            cfg.spec.allow_relaxed_time = m["allow_relaxed_time"].get<bool>();
        }
    }
    if (cfg.spec.maneuver_class == ManeuverClass::TimeFixedRendezvous &&
        !cfg.spec.mission_time) {
        throw ConfigError("config: time-fixed rendezvous requires maneuver.mission_time_days");
    }

    if (root.contains("optimizer")) {
        const json& o = root["optimizer"];
        require_keys(o, "optimizer.",
                     {"seed", "population_multiplier", "generations", "restarts",
                      "penalty_km_s", "midpoint_radius_lo_km", "midpoint_radius_hi_km"});
        if (o.contains("seed")) cfg.optimizer.seed = o["seed"].get<std::uint64_t>();
        if (o.contains("population_multiplier")) {
            cfg.optimizer.population_multiplier = o["population_multiplier"].get<int>();
        }
        if (o.contains("generations")) cfg.optimizer.generations = o["generations"].get<int>();
        if (o.contains("restarts")) cfg.optimizer.restarts = o["restarts"].get<int>();
        if (o.contains("penalty_km_s")) cfg.optimizer.penalty = o["penalty_km_s"].get<double>();
        if (o.contains("midpoint_radius_lo_km")) {
            cfg.optimizer.midpoint_radius_lo = o["midpoint_radius_lo_km"].get<double>();
        }
        if (o.contains("midpoint_radius_hi_km")) {
            cfg.optimizer.midpoint_radius_hi = o["midpoint_radius_hi_km"].get<double>();
        }
    }

    if (root.contains("allocation")) {
        const json& a = root["allocation"];
        require_keys(a, "allocation.",
                     {"kappa", "alpha_grid", "family_caps", "dv_max_km_s", "close_ap",
                      "n0", "nf", "npf"});
        if (a.contains("kappa")) cfg.kappa = a["kappa"].get<int>();
        if (a.contains("alpha_grid")) cfg.alpha_grid = a["alpha_grid"].get<int>();
        if (a.contains("family_caps")) {
            cfg.family_caps = a["family_caps"].get<std::vector<int>>();
        }
        if (a.contains("dv_max_km_s")) cfg.dv_max = a["dv_max_km_s"].get<double>();
        if (a.contains("close_ap")) cfg.close_ap = a["close_ap"].get<int>();
        if (a.contains("n0")) cfg.n0 = a["n0"].get<int>();
        if (a.contains("nf")) cfg.nf = a["nf"].get<int>();
        if (a.contains("npf")) cfg.npf = a["npf"].get<std::vector<int>>();
        if (cfg.kappa < 0 || cfg.alpha_grid < 1) {
            throw ConfigError("config: allocation.kappa and alpha_grid must be positive");
        }
    }

    if (root.contains("output")) {
        const json& o = root["output"];
        require_keys(o, "output.", {"directory"});
        if (o.contains("directory")) cfg.output_directory = o["directory"].get<std::string>();
    }

    std::ostringstream hash_src;
    hash_src << root.dump();
    std::ostringstream hex;
    hex << std::hex << fnv1a(hash_src.str());
    cfg.config_hash = hex.str();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path));
}

namespace {

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

json to_json(const StateVector& s) {
    return {{"r_km", vec3(s.r)}, {"v_km_s", vec3(s.v)}, {"t_s", s.t}};
}

json to_json(const Impulse& imp) {
    return {{"t_s", imp.t},
            {"t_days", imp.t / kSecondsPerDay},
            {"dv_km_s", vec3(imp.dv)},
            {"mag_km_s", imp.mag},
            {"ap_index", imp.ap_index}};
}

json to_json(const BaseSolution& sol) {
    json j;
    j["kind"] = sol.kind == BaseKind::TwoImpulse ? "two-impulse" : "three-impulse";
    j["dv_total_km_s"] = sol.dv_total;
    j["theta_i_rad"] = sol.theta_i;
    j["theta_f_rad"] = sol.theta_f;
    j["t_c1_s"] = sol.t_c1;
    j["t_c2_s"] = sol.t_c2;
    j["t_pf_arcs_s"] = sol.t_pf_arcs;
    j["T_pf_periods_s"] = sol.T_pf_periods;
    j["coast_total_days"] = sol.coast_total() / kSecondsPerDay;
    j["impulses"] = json::array();
    for (const Impulse& imp : sol.impulses) j["impulses"].push_back(to_json(imp));
    j["ap_states"] = json::array();
    for (const StateVector& s : sol.ap_states) j["ap_states"].push_back(to_json(s));
    if (sol.midpoint) {
        j["midpoint"] = {{"r_km", sol.midpoint->r},
                         {"azimuth_rad", sol.midpoint->azimuth},
                         {"elevation_rad", sol.midpoint->elevation}};
    }
    if (!sol.notes.empty()) j["notes"] = sol.notes;
    return j;
}

BaseSolution base_solution_from_json(const json& j) {
    BaseSolution sol;
    const std::string kind = j.at("kind").get<std::string>();
    sol.kind = kind == "two-impulse" ? BaseKind::TwoImpulse : BaseKind::ThreeImpulse;
    sol.dv_total = j.at("dv_total_km_s").get<double>();
    sol.theta_i = j.at("theta_i_rad").get<double>();
    sol.theta_f = j.at("theta_f_rad").get<double>();
    sol.t_c1 = j.at("t_c1_s").get<double>();
    sol.t_c2 = j.at("t_c2_s").get<double>();
    sol.t_pf_arcs = j.at("t_pf_arcs_s").get<std::vector<double>>();
    sol.T_pf_periods = j.at("T_pf_periods_s").get<std::vector<double>>();
    for (const json& ji : j.at("impulses")) {
        Impulse imp;
        imp.t = ji.at("t_s").get<double>();
        imp.dv = vec3_from(ji.at("dv_km_s"));
        imp.mag = ji.at("mag_km_s").get<double>();
        imp.ap_index = ji.at("ap_index").get<int>();
        sol.impulses.push_back(imp);
    }
    for (const json& js : j.at("ap_states")) {
        StateVector s;
        s.r = vec3_from(js.at("r_km"));
        s.v = vec3_from(js.at("v_km_s"));
        s.t = js.at("t_s").get<double>();
        sol.ap_states.push_back(s);
    }
    if (j.contains("midpoint")) {
        sol.midpoint = MidPoint{j["midpoint"].at("r_km").get<double>(),
                                j["midpoint"].at("azimuth_rad").get<double>(),
                                j["midpoint"].at("elevation_rad").get<double>()};
    }
    if (j.contains("notes")) sol.notes = j["notes"].get<std::vector<std::string>>();
    return sol;
}

json to_json(const SelectionVerdict& verdict) {
    json j;
    j["chosen"] = to_string(verdict.chosen);
    j["rationale"] = to_string(verdict.rationale);
    if (verdict.tof_available) {
        j["tof_available_days"] = *verdict.tof_available / kSecondsPerDay;
    }
    if (verdict.extended_mission_time) {
        j["extended_mission_time_days"] = *verdict.extended_mission_time / kSecondsPerDay;
    }
    return j;
}

json to_json(const FeasibleSpace& space) {
    json j;
    j["count"] = space.count;
    j["bounds"] = json::array();
    for (const auto& [lo, hi] : space.bounds) {
        j["bounds"].push_back({{"lower", lo}, {"upper", hi}});
    }
    j["points"] = space.points;
    return j;
}

json to_json(const SolutionFamily& family) {
    return {{"n0", family.n0}, {"nf", family.nf}, {"npf", family.npf},
            {"per_ap", family.per_ap}};
}

json to_json(const RealizedMember& member, const CentralBody& body) {
    json j;
    j["family"] = to_json(member.family);
    j["ladder"] = json::array();
    for (const auto& rungs : member.ladder.per_ap) {
        json ap = json::array();
        for (const auto& [alpha, period] : rungs) {
            ap.push_back({{"alpha", alpha}, {"T_days", period / kSecondsPerDay}});
        }
        j["ladder"].push_back(ap);
    }
    j["mission_time_days"] = member.assembled.mission_time / kSecondsPerDay;
    j["dv_total_km_s"] = member.assembled.dv_total;
    j["impulses"] = json::array();
    for (std::size_t i = 0; i < member.assembled.schedule.impulses.size(); ++i) {
        json imp = to_json(member.assembled.schedule.impulses[i]);
        const StateVector& pre = member.assembled.schedule.pre_states[i];
        imp["orbit_elements_pre"] = [&] {
            const OrbitElements el = state_to_elements(pre, body);
            return json{{"a_km", el.a},   {"e", el.e},       {"inc_rad", el.inc},
                        {"raan_rad", el.raan}, {"argp_rad", el.argp}, {"ta_rad", el.ta}};
        }();
        j["impulses"].push_back(imp);
    }
    return j;
}

json to_json(const Envelope& env) {
    json j;
    j["ap_index"] = env.ap_index;
    j["ladder_index"] = env.ladder_index;
    j["has_extra_upper_corner"] = env.has_extra_upper_corner;
    j["has_extra_lower_corner"] = env.has_extra_lower_corner;
    j["area_days2"] = env.area() / (kSecondsPerDay * kSecondsPerDay);
    j["corners"] = json::array();
    for (const auto& [x, y] : env.corners) {
        j["corners"].push_back({{"T11_days", x / kSecondsPerDay},
                                {"Tki_days", y / kSecondsPerDay}});
    }
    return j;
}

std::string trajectory_csv(const ImpulseSchedule& sched, double trailing_coast,
                           int samples_per_arc, const CentralBody& body) {
    std::ostringstream os;
    os.precision(12);
    os << "t_days,x_km,y_km,z_km\n";
    for (std::size_t i = 0; i < sched.impulses.size(); ++i) {
        StateVector s = sched.pre_states[i];
        s.v += sched.impulses[i].dv;
        const double span = (i + 1 < sched.impulses.size())
                                ? sched.impulses[i + 1].t - sched.impulses[i].t
                                : trailing_coast;
        for (int k = 0; k < samples_per_arc; ++k) {
            const double tau = span * k / samples_per_arc;
            const StateVector sample = propagate(s, tau, body);
            os << (sched.impulses[i].t + tau) / kSecondsPerDay << ',' << sample.r.x()
               << ',' << sample.r.y() << ',' << sample.r.z() << '\n';
        }
    }
    return os.str();
}

std::string feasible_space_csv(const FeasibleSpace& space) {
    std::ostringstream os;
    const std::size_t na = space.bounds.size();
    os << "sumN1";
    for (std::size_t i = 1; i < na; ++i) os << ",sumN" << i + 1;
    os << ",feasible\n";
    if (space.points.empty()) return os.str();

    std::vector<int> lo(na), hi(na);
    for (std::size_t i = 0; i < na; ++i) {
        lo[i] = std::max(1, static_cast<int>(std::ceil(space.bounds[i].first)));
        hi[i] = static_cast<int>(std::floor(space.bounds[i].second));
    }
    // make the dump cover every stored point even outside the skeleton box
    for (const auto& p : space.points) {
        for (std::size_t i = 0; i < na; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }

    std::vector<int> tuple(lo);
    while (true) {
        const bool feasible = std::binary_search(space.points.begin(), space.points.end(), tuple);
        for (std::size_t i = 0; i < na; ++i) os << tuple[i] << ',';
        os << (feasible ? 1 : 0) << '\n';
        std::size_t k = na;
        bool done = true;
        while (k > 0) {
            --k;
            if (++tuple[k] <= hi[k]) {
                done = false;
                break;
            }
            tuple[k] = lo[k];
        }
        if (done) break;
    }
    return os.str();
}

std::string envelopes_csv(const std::vector<Envelope>& envelopes) {
    std::ostringstream os;
    os.precision(12);
    os << "T11_days,Tki_days,orbit_id\n";
    for (const Envelope& env : envelopes) {
        for (const auto& [x, y] : env.corners) {
            os << x / kSecondsPerDay << ',' << y / kSecondsPerDay << ','
               << env.ap_index << '-' << env.ladder_index << '\n';
        }
    }
    return os.str();
}

std::string primer_csv(const PrimerHistory& history) {
    std::ostringstream os;
    os.precision(12);
    os << "t_days,p_mag\n";
    for (const auto& [t, mag] : history.samples) {
        os << t / kSecondsPerDay << ',' << mag << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace isoimp
