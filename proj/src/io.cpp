#include "canard/io.hpp"

#include "canard/csv.hpp"
#include "canard/error.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace canard::io {
namespace {

template <typename T>
struct Field {
    const char* name;
    double T::*member;
};

constexpr Field<PhysicalParams> kPhysicalFields[] = {
    {"C_p", &PhysicalParams::C_p},
    {"Q", &PhysicalParams::Q},
    {"alpha_max", &PhysicalParams::alpha_max},
    {"alpha_min", &PhysicalParams::alpha_min},
    {"D", &PhysicalParams::D},
    {"T_tilde", &PhysicalParams::T_tilde},
    {"T_star", &PhysicalParams::T_star},
    {"B0", &PhysicalParams::B0},
    {"B1", &PhysicalParams::B1},
    {"B2", &PhysicalParams::B2},
    {"B3", &PhysicalParams::B3},
    {"B4", &PhysicalParams::B4},
    {"B5", &PhysicalParams::B5},
    {"B6", &PhysicalParams::B6},
    {"P", &PhysicalParams::P},
    {"L", &PhysicalParams::L},
};

constexpr Field<DimensionlessParams> kDimensionlessFields[] = {
    {"k", &DimensionlessParams::k},
    {"p", &DimensionlessParams::p},
    {"a", &DimensionlessParams::a},
    {"b", &DimensionlessParams::b},
    {"m", &DimensionlessParams::m},
    {"lambda", &DimensionlessParams::lambda},
    {"r", &DimensionlessParams::r},
    {"epsilon", &DimensionlessParams::epsilon},
};

template <typename T, std::size_t N>
json fields_to_json(const T& value, const Field<T> (&fields)[N]) {
    json j = json::object();
    for (const auto& f : fields) {
        j[f.name] = value.*(f.member);
    }
    return j;
}

template <typename T, std::size_t N>
T fields_from_json(const json& j, const Field<T> (&fields)[N], const char* what) {
    if (!j.is_object()) {
        throw UsageError(std::string(what) + ": expected a JSON object");
    }
    std::set<std::string> known;
    for (const auto& f : fields) {
        known.insert(f.name);
    }
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) {
            throw UsageError(std::string(what) + ": unknown key '" + key + "'");
        }
    }
    T out{};
    for (const auto& f : fields) {
        if (!j.contains(f.name)) {
            throw UsageError(std::string(what) + ": missing key '" + f.name + "'");
        }
        const json& v = j.at(f.name);
        if (!v.is_number()) {
            throw UsageError(std::string(what) + ": '" + f.name + "' must be a number");
        }
        out.*(f.member) = v.get<double>();
    }
    return out;
}

json condition(const Condition& c) { return {{"value", c.value}, {"pass", c.pass}}; }

template <typename T>
json optional_value(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const PhysicalParams& p) { return fields_to_json(p, kPhysicalFields); }

PhysicalParams physical_from_json(const json& j) {
    return fields_from_json(j, kPhysicalFields, "PhysicalParams");
}

json to_json(const DimensionlessParams& p) { return fields_to_json(p, kDimensionlessFields); }

DimensionlessParams dimensionless_from_json(const json& j) {
    return fields_from_json(j, kDimensionlessFields, "DimensionlessParams");
}

json to_json(const Scales& s) {
    return {{"S0", s.S0}, {"A0", s.A0}, {"H0", s.H0}, {"t0", s.t0}};
}

json to_json(const Nondimensionalization& n) {
    return {{"params", to_json(n.params)}, {"scales", to_json(n.scales)}, {"K", n.K}};
}

json to_json(const ConditionReport& r) {
    json j;
    j["mode"] = to_string(r.mode);
    j["conditions"] = {
        {"a", condition(r.a)}, {"b", condition(r.b)}, {"c", condition(r.c)},
        {"d", condition(r.d)}, {"e", condition(r.e)}, {"f", condition(r.f)},
        {"g", condition(r.g)}, {"h", condition(r.h)}, {"i", condition(r.i)},
    };
    j["variants"] = {
        {"b_original", condition(r.b_original)},
        {"d_printed", condition(r.d_printed)},
        {"d_eigen", condition(r.d_eigen)},
        {"e_printed", condition(r.e_printed)},
        {"e_sharp", condition(r.e_sharp)},
        {"i_printed", condition(r.i_printed)},
        {"i_variant", condition(r.i_variant)},
        {"i_direct", condition(r.i_direct)},
        {"delta_below_four", condition(r.delta_below_four)},
    };
    j["delta"] = r.delta;
    j["r_max"] = r.r_max;
    j["discriminant_verdict"] = to_string(r.discriminant_verdict);
    j["z_plus"] = r.z_plus;
    j["z_star"] = optional_value(r.z_star);
    j["mu_strong"] = optional_value(r.mu_strong);
    j["no_folded_node"] = r.no_folded_node;
    j["verdict"] = r.verdict;
    j["verdict_subset"] = r.verdict_subset;
    return j;
}

json to_json(const FoldedSingularity& s) {
    json j;
    j["fold_side"] = to_string(s.side);
    j["x"] = s.x;
    j["z_value"] = s.z;
    j["jacobian"] = {{s.jacobian.entries[0][0], s.jacobian.entries[0][1]},
                     {s.jacobian.entries[1][0], s.jacobian.entries[1][1]}};
    j["trace"] = s.jacobian.trace;
    j["det"] = s.jacobian.det;
    j["discriminant"] = s.jacobian.discriminant;
    j["classification"] = to_string(s.classification);
    j["eigen_strong"] = optional_value(s.eigen_strong);
    j["eigen_weak"] = optional_value(s.eigen_weak);
    j["slope_strong"] = optional_value(s.slope_strong);
    j["slope_weak"] = optional_value(s.slope_weak);
    j["mu_ratio"] = optional_value(s.mu_ratio);
    if (s.s_predicted) {
        j["s_predicted"] = s.s_predicted->count;
        j["s_floor"] = s.s_predicted->floor_count;
        j["s_on_boundary"] = s.s_predicted->on_boundary;
    } else {
        j["s_predicted"] = nullptr;
    }
    return j;
}

json to_json(const OrdinarySingularity& s) {
    return {{"x", s.x}, {"z", s.z}, {"branch", to_string(s.branch)}};
}

json to_json(const SingularOrbit& o) {
    json j;
    j["method"] = to_string(o.method);
    j["status"] = to_string(o.status);
    json segs = json::array();
    for (const auto& s : o.segments) {
        segs.push_back({{"kind", to_string(s.kind)},
                        {"start", {s.start[0], s.start[1]}},
                        {"end", {s.end[0], s.end[1]}},
                        {"samples", s.samples.size()}});
    }
    j["segments"] = segs;
    j["z_minus"] = o.z_minus;
    j["crossing_z"] = o.crossing_z;
    j["crossing_xdot"] = o.crossing_xdot;
    j["transversal"] = o.transversal;
    j["landing"] = {o.landing[0], o.landing[1]};
    j["z_star"] = o.z_star;
    j["canard_z_at_landing"] = optional_value(o.canard_z_at_landing);
    j["in_funnel_linear"] = o.in_funnel_linear;
    j["in_funnel_numeric"] = o.in_funnel_numeric;
    j["closed"] = o.closed;
    return j;
}

json to_json(const CanardApprox& c) {
    json j;
    j["status"] = to_string(c.status);
    j["seed_offset"] = c.seed_offset;
    j["tangent_slope_at_node"] = c.tangent_slope_at_node;
    j["slope_strong"] = c.slope_strong;
    j["z_minus"] = c.z_minus;
    j["x_stop"] = c.x_stop;
    j["z_at_stop"] = optional_value(c.z_at_stop);
    j["z_at_stop_refined"] = optional_value(c.z_at_stop_refined);
    j["richardson_delta"] = optional_value(c.richardson_delta);
    j["samples"] = c.samples.size();
    return j;
}

json to_json(const MmoSignature& s) {
    json j;
    json blocks = json::array();
    for (const auto& b : s.blocks) {
        blocks.push_back({{"L", b.large}, {"s", b.small}});
    }
    j["blocks"] = blocks;
    j["canonical_string"] = s.canonical_string;
    j["periodic"] = s.periodic;
    json table = json::array();
    for (std::size_t i = 0; i < s.oscillations.size(); ++i) {
        const auto& o = s.oscillations[i];
        table.push_back({{"t_peak", o.t_peak},
                         {"x_max", o.x_max},
                         {"x_min_before", o.x_min_before},
                         {"kind", i < s.kinds.size() ? to_string(s.kinds[i]) : "?"}});
    }
    j["oscillation_table"] = table;
    return j;
}

json to_json(const IntegratorConfig& c) {
    return {{"method", "dormand_prince_5_4"},
            {"rtol", c.rtol},
            {"atol", c.atol},
            {"atol_components", c.atol_components},
            {"h_init", c.h_init},
            {"h_max", std::isfinite(c.h_max) ? json(c.h_max) : json(nullptr)},
            {"max_steps", c.max_steps},
            {"adaptive", c.adaptive}};
}

json to_json(const StepStats& s) {
    return {{"accepted", s.accepted}, {"rejected", s.rejected}, {"evaluations", s.evaluations}};
}

json trajectory_sidecar(const Trajectory<3>& traj, const IntegratorConfig& cfg,
                        const DimensionlessParams& q) {
    return {{"config", to_json(cfg)},
            {"step_stats", to_json(traj.stats)},
            {"truncated", traj.truncated},
            {"params", to_json(q)},
            {"points", traj.size()}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory<3>& traj) {
    os << "t,x,y,z\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj.states[i];
        os << csv::number(traj.times[i]) << ',' << csv::number(s[0]) << ','
           << csv::number(s[1]) << ',' << csv::number(s[2]) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<std::pair<double, Vec<3>>>& samples) {
    os << "t,x,y,z\n";
    for (const auto& [t, s] : samples) {
        os << csv::number(t) << ',' << csv::number(s[0]) << ',' << csv::number(s[1]) << ','
           << csv::number(s[2]) << '\n';
    }
}

TimeSeries read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw UsageError("trajectory CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "t,x,y,z") {
        throw UsageError("trajectory CSV header must be 't,x,y,z', got '" + line + "'");
    }
    TimeSeries ts;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cols = csv::split(line);
        if (cols.size() != 4) {
            throw UsageError("trajectory CSV row " + std::to_string(row) + ": expected 4 columns");
        }
        const double t = csv::parse_number(cols[0]);
        if (!ts.t.empty() && !(t > ts.t.back())) {
            throw UsageError("trajectory CSV row " + std::to_string(row) +
                             ": times must be strictly increasing");
        }
        ts.t.push_back(t);
        ts.x.push_back(csv::parse_number(cols[1]));
        ts.y.push_back(csv::parse_number(cols[2]));
        ts.z.push_back(csv::parse_number(cols[3]));
    }
    return ts;
}

void write_orbit_csv(std::ostream& os, const SingularOrbit& orbit) {
    os << "segment,kind,x,z\n";
    for (std::size_t i = 0; i < orbit.segments.size(); ++i) {
        const auto& seg = orbit.segments[i];
        for (const auto& p : seg.samples) {
            os << i << ',' << to_string(seg.kind) << ',' << csv::number(p[0]) << ','
               << csv::number(p[1]) << '\n';
        }
    }
}

void write_canard_csv(std::ostream& os, const CanardApprox& canard) {
    os << "x,z\n";
    for (const auto& p : canard.samples) {
        os << csv::number(p[0]) << ',' << csv::number(p[1]) << '\n';
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write " + path.string());
    }
    out << content;
}

}  // namespace canard::io
