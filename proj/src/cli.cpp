#include "canard/cli.hpp"

#include "canard/canard.hpp"
#include "canard/error.hpp"
#include "canard/gsp.hpp"
#include "canard/io.hpp"
#include "canard/signature.hpp"
#include "canard/simulation.hpp"
#include "canard/sweep.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace canard {
namespace {

namespace fs = std::filesystem;
using io::json;

// Default parameter set: the folded-node configuration with a closed singular
// orbit (k=4, p=3, a=0.8, b=2.1, m=1, lambda=1, r=1) at epsilon = 0.01.
DimensionlessParams default_params() {
    return {.k = 4.0, .p = 3.0, .a = 0.8, .b = 2.1, .m = 1.0, .lambda = 1.0, .r = 1.0,
            .epsilon = 0.01};
}

struct ParamFlags {
    std::string file;
    std::optional<double> k, p, a, b, m, lambda, r, epsilon;

    void attach(CLI::App* cmd) {
        cmd->add_option("--params", file, "Dimensionless parameter JSON file")
            ->check(CLI::ExistingFile);
        cmd->add_option("--k", k);
        cmd->add_option("--p", p);
        cmd->add_option("--a", a);
        cmd->add_option("--b", b);
        cmd->add_option("--m", m);
        cmd->add_option("--lambda", lambda);
        cmd->add_option("--r", r);
        cmd->add_option("--epsilon", epsilon);
    }

    [[nodiscard]] DimensionlessParams resolve() const {
        DimensionlessParams q = file.empty() ? default_params()
                                             : io::dimensionless_from_json(io::read_json_file(file));
        const std::pair<const std::optional<double>*, double*> overrides[] = {
            {&k, &q.k}, {&p, &q.p}, {&a, &q.a}, {&b, &q.b},
            {&m, &q.m}, {&lambda, &q.lambda}, {&r, &q.r}, {&epsilon, &q.epsilon},
        };
        for (const auto& [flag, slot] : overrides) {
            if (*flag) {
                *slot = **flag;
            }
        }
        q.validate();
        return q;
    }
};

struct IntegratorFlags {
    double rtol = 1e-9;
    double atol = 1e-11;
    std::size_t max_steps = 5'000'000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rtol", rtol, "Relative tolerance")->capture_default_str();
        cmd->add_option("--atol", atol, "Absolute tolerance")->capture_default_str();
        cmd->add_option("--max-steps", max_steps)->capture_default_str();
    }

    [[nodiscard]] IntegratorConfig config() const {
        IntegratorConfig cfg;
        cfg.rtol = rtol;
        cfg.atol = atol;
        cfg.max_steps = max_steps;
        cfg.validate();
        return cfg;
    }
};

struct SimulationFlags {
    double t_end = kDefaultHorizon;
    double x0 = 0.0, y0 = 0.0, z0 = 0.0;
    double dt = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--t-end", t_end, "Slow-time horizon")->capture_default_str();
        cmd->add_option("--x0", x0)->capture_default_str();
        cmd->add_option("--y0", y0)->capture_default_str();
        cmd->add_option("--z0", z0)->capture_default_str();
        cmd->add_option("--dt", dt, "Resample the CSV on a uniform grid (0 keeps solver steps)");
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string to_csv(const auto& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
}

fs::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("CANARD_SCOPE_OUT"); env && *env) {
        return env;
    }
    return ".";
}

AxisRange parse_range(const std::string& text, int count, const char* name) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError(std::string("--") + name + "-range expects MIN:MAX");
    }
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        return {lo, hi, count};
    } catch (const std::logic_error&) {
        throw UsageError(std::string("--") + name + "-range expects MIN:MAX, got '" + text + "'");
    }
}

std::array<int, 3> parse_grid(const std::string& text) {
    std::array<int, 3> n{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const auto sep = text.find('x', pos);
        const std::string part =
            text.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit) ||
            (i < 2 && sep == std::string::npos) || (i == 2 && sep != std::string::npos)) {
            throw UsageError("--grid expects AxPxM, e.g. 50x50x1");
        }
        n[i] = std::stoi(part);
        pos = sep + 1;
    }
    return n;
}

Trajectory<3> run_simulation(const DimensionlessParams& q, const SimulationFlags& sim,
                             const IntegratorConfig& cfg) {
    if (!(sim.t_end > 0.0)) {
        throw UsageError("--t-end must be > 0");
    }
    Trajectory<3> traj = simulate(q, {sim.x0, sim.y0, sim.z0}, sim.t_end, cfg);
    if (traj.truncated) {
        throw NumericError("integration stopped after max_steps before t_end");
    }
    return traj;
}

std::string trajectory_csv(const Trajectory<3>& traj, double dt) {
    if (dt > 0.0) {
        const auto samples = sample_uniform(traj, dt);
        return to_csv([&](std::ostream& os) { io::write_trajectory_csv(os, samples); });
    }
    return to_csv([&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fast/slow carbon-climate model: analysis, simulation and sweeps",
                 "canard_scope"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_flag;
    app.add_option("--out", out_flag, "Output directory (default $CANARD_SCOPE_OUT or .)");

    ParamFlags params;
    IntegratorFlags integ;
    SimulationFlags sim;

    auto* check = app.add_subcommand("check", "Evaluate conditions (a)-(i)");
    std::string mode_text = "strict";
    params.attach(check);
    check->add_option("--mode", mode_text)->check(CLI::IsMember({"strict", "sharp"}))
        ->capture_default_str();

    auto* node = app.add_subcommand("node", "Folded and ordinary singularities");
    params.attach(node);

    auto* orbit = app.add_subcommand("orbit", "Singular periodic orbit through the folded node");
    std::string method_text = "numeric";
    params.attach(orbit);
    orbit->add_option("--method", method_text)->check(CLI::IsMember({"linear", "numeric"}))
        ->capture_default_str();

    auto* canard_cmd = app.add_subcommand("canard", "Trace the strong canard on M_A-");
    double x_stop = -2.0;
    double seed_offset = 0.0;
    params.attach(canard_cmd);
    canard_cmd->add_option("--x-stop", x_stop)->capture_default_str();
    canard_cmd->add_option("--seed-offset", seed_offset, "0 selects the automatic offset");

    auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the dimensionless system");
    params.attach(simulate_cmd);
    integ.attach(simulate_cmd);
    sim.attach(simulate_cmd);

    auto* signature_cmd = app.add_subcommand("signature", "MMO signature of a trajectory");
    std::string input;
    double transient = kDefaultTransientFraction;
    params.attach(signature_cmd);
    integ.attach(signature_cmd);
    sim.attach(signature_cmd);
    signature_cmd->add_option("--input", input, "Trajectory CSV (t,x,y,z); simulates if absent")
        ->check(CLI::ExistingFile);
    signature_cmd->add_option("--transient", transient, "Leading fraction discarded")
        ->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Condition region over (a, p, m)");
    SweepSpec spec;
    std::string grid = "50x50x1";
    std::string a_range = "-1:1";
    std::string p_range = "0.12:6";
    std::optional<std::string> m_range;
    double m_fixed = 0.6;
    std::string emit_text = "full";
    std::string sweep_mode = "strict";
    sweep_cmd->add_option("--delta", spec.delta)->capture_default_str();
    sweep_cmd->add_option("--m", m_fixed, "m when --m-range is absent")->capture_default_str();
    sweep_cmd->add_option("--r", spec.r)->capture_default_str();
    sweep_cmd->add_option("--k", spec.k)->capture_default_str();
    sweep_cmd->add_option("--lambda", spec.lambda)->capture_default_str();
    sweep_cmd->add_option("--grid", grid, "Point counts AxPxM")->capture_default_str();
    sweep_cmd->add_option("--a-range", a_range, "MIN:MAX")->capture_default_str();
    sweep_cmd->add_option("--p-range", p_range, "MIN:MAX")->capture_default_str();
    sweep_cmd->add_option("--m-range", m_range, "MIN:MAX");
    sweep_cmd->add_option("--mode", sweep_mode)->check(CLI::IsMember({"strict", "sharp"}))
        ->capture_default_str();
    sweep_cmd->add_flag("--subset", spec.subset, "Verdict over (a)-(d), (g), (h) only");
    sweep_cmd->add_option("--emit", emit_text)->check(CLI::IsMember({"region", "full"}))
        ->capture_default_str();
    sweep_cmd->add_option("--threads", spec.threads, "0 uses all cores");

    auto* nondim = app.add_subcommand("nondim", "Scale a physical parameter set");
    std::string physical_file;
    nondim->add_option("--params", physical_file, "Physical parameter JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        const fs::path dir = resolve_out_dir(out_flag);

        if (check->parsed()) {
            const auto mode = mode_text == "sharp" ? ConditionMode::sharp : ConditionMode::strict;
            const json j = io::to_json(check_conditions(params.resolve(), mode));
            io::write_file(dir / "conditions.json", dump(j));
            out << dump(j);
        } else if (node->parsed()) {
            const DimensionlessParams q = params.resolve();
            json j;
            j["folded"] = json::array();
            for (const auto& s : find_folded_singularities(q)) {
                j["folded"].push_back(io::to_json(s));
            }
            j["ordinary"] = json::array();
            for (const auto& s : ordinary_singularities(q)) {
                j["ordinary"].push_back(io::to_json(s));
            }
            j["delta"] = delta(q);
            io::write_file(dir / "node.json", dump(j));
            out << dump(j);
        } else if (orbit->parsed()) {
            const auto method =
                method_text == "linear" ? FunnelMethod::linear : FunnelMethod::numeric;
            const SingularOrbit o = build_singular_orbit(params.resolve(), method);
            io::write_file(dir / "orbit.csv",
                           to_csv([&](std::ostream& os) { io::write_orbit_csv(os, o); }));
            const json j = io::to_json(o);
            io::write_file(dir / "orbit.json", dump(j));
            out << dump(j);
        } else if (canard_cmd->parsed()) {
            CanardOptions opts;
            opts.x_stop = x_stop;
            opts.seed_offset = seed_offset;
            const CanardApprox c = strong_canard(params.resolve(), opts);
            io::write_file(dir / "canard.csv",
                           to_csv([&](std::ostream& os) { io::write_canard_csv(os, c); }));
            const json j = io::to_json(c);
            io::write_file(dir / "canard.json", dump(j));
            out << dump(j);
        } else if (simulate_cmd->parsed()) {
            const DimensionlessParams q = params.resolve();
            const IntegratorConfig cfg = integ.config();
            const Trajectory<3> traj = run_simulation(q, sim, cfg);
            io::write_file(dir / "trajectory.csv", trajectory_csv(traj, sim.dt));
            const json j = io::trajectory_sidecar(traj, cfg, q);
            io::write_file(dir / "trajectory.json", dump(j));
            out << dump(j);
        } else if (signature_cmd->parsed()) {
            MmoSignature sig;
            if (!input.empty()) {
                std::ifstream in(input);
                const io::TimeSeries ts = io::read_trajectory_csv(in);
                sig = signature(ts.t, ts.x, transient);
            } else {
                const DimensionlessParams q = params.resolve();
                const IntegratorConfig cfg = integ.config();
                const Trajectory<3> traj = run_simulation(q, sim, cfg);
                io::write_file(dir / "trajectory.csv", trajectory_csv(traj, sim.dt));
                io::write_file(dir / "trajectory.json", dump(io::trajectory_sidecar(traj, cfg, q)));
                sig = signature(traj, transient);
            }
            const json j = io::to_json(sig);
            io::write_file(dir / "signature.json", dump(j));
            out << dump({{"canonical_string", sig.canonical_string},
                         {"periodic", sig.periodic},
                         {"oscillations", sig.oscillations.size()}});
        } else if (sweep_cmd->parsed()) {
            const auto counts = parse_grid(grid);
            spec.a = parse_range(a_range, counts[0], "a");
            spec.p = parse_range(p_range, counts[1], "p");
            spec.m = m_range ? parse_range(*m_range, counts[2], "m")
                             : AxisRange{m_fixed, m_fixed, counts[2]};
            if (!m_range && counts[2] != 1) {
                throw UsageError("--grid with more than one m point needs --m-range");
            }
            spec.mode = sweep_mode == "sharp" ? ConditionMode::sharp : ConditionMode::strict;
            spec.emit = emit_text == "region" ? SweepEmit::region : SweepEmit::full;
            const auto rows = run_sweep(spec);
            io::write_file(dir / "region.csv", to_csv([&](std::ostream& os) {
                               write_region_csv(os, rows, spec.emit);
                           }));
            const auto passing = std::count_if(rows.begin(), rows.end(),
                                               [](const RegionRow& r) { return r.verdict; });
            out << dump({{"points", rows.size()},
                         {"passing", passing},
                         {"mode", to_string(spec.mode)},
                         {"subset", spec.subset},
                         {"csv", (dir / "region.csv").string()}});
        } else if (nondim->parsed()) {
            const PhysicalParams phys = io::physical_from_json(io::read_json_file(physical_file));
            const json j = io::to_json(nondimensionalize(phys));
            io::write_file(dir / "nondim.json", dump(j));
            out << dump(j);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_ok;
}

}  // namespace canard
