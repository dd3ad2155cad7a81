#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "pbrs/audit.hpp"
#include "pbrs/experiment.hpp"
#include "pbrs/svg.hpp"
#include "pbrs/tabular_mdp.hpp"

namespace {

using namespace pbrs;

const std::set<std::string> kAuditKeys = {
    "env.name", "env.width", "env.height", "env.reward_mode", "env.max_steps",
    "agent.gamma", "audit.q_init", "audit.r_g", "audit.r_inf", "audit.terminal_is_goal",
    "potential.base", "potential.constant", "potential.normalize",
    "potential.renormalize", "potential.bias", "potential.exp_base", "output.dir",
};

const std::set<std::string> kSolveKeys = {
    "env.name", "env.width", "env.height", "env.reward_mode", "env.max_steps",
    "agent.gamma", "solve.tol", "solve.max_iters", "output.dir",
};

const std::set<std::string> kSurfaceKeys = {
    "surface.gamma", "surface.exp_bases", "surface.phi_min", "surface.phi_max",
    "surface.phi_steps", "surface.delta_min", "surface.delta_max", "surface.delta_steps",
    "output.dir",
};

std::vector<double> linspace(double lo, double hi, long steps) {
    std::vector<double> out;
    if (steps < 2) {
        out.push_back(lo);
        return out;
    }
    for (long i = 0; i < steps; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
    return out;
}

// Shares the experiment schema for env/potential keys so audit configs can
// reuse run configs.
PotentialSpec audit_potential(const Config& cfg, const GridworldConfig& grid) {
    ExperimentConfig ec;
    ec.env_name = "gridworld";
    ec.grid = grid;
    ec.agent = "tabular";
    ec.gamma = cfg.get_double("agent.gamma", 0.95);
    ec.potential_base = cfg.get_string("potential.base", "none");
    ec.potential_normalize = cfg.get_bool("potential.normalize", false);
    ec.potential_renormalize = cfg.get_bool("potential.renormalize", false);
    ec.potential_constant = cfg.get_double("potential.constant", 0.0);
    if (cfg.has("potential.exp_base")) ec.exp_base = cfg.get_double("potential.exp_base");
    return ec.make_potential(cfg.get_double("potential.bias", 0.0));
}

int cmd_run(const std::string& config_path, bool desk_scale, long seed_offset) {
    Config cfg = Config::parse_file(config_path);
    if (desk_scale) apply_desk_scale(cfg);
    const ExperimentOutput out = run_experiment(cfg, seed_offset);
    for (const auto& f : out.files_written) std::cout << "wrote " << f << '\n';
    for (const auto& e : out.excluded_runs) std::cout << "excluded " << e << '\n';
    return 0;
}

int cmd_audit(const std::string& config_path, const std::string& transitions_path,
              const std::string& out_path) {
    const Config cfg = Config::parse_file(config_path);
    cfg.require_known_keys(kAuditKeys);
    if (cfg.get_string("env.name") != "gridworld")
        throw ConfigError("audit: only gridworld configs are supported");

    GridworldConfig grid;
    grid.width = static_cast<int>(cfg.get_long("env.width", 25));
    grid.height = static_cast<int>(cfg.get_long("env.height", 25));
    grid.reward_mode = reward_mode_from_string(cfg.get_string("env.reward_mode", "goal_directed"));
    grid.max_steps = static_cast<int>(cfg.get_long("env.max_steps", 250));
    grid.validate();

    AuditInput in;
    in.spec = audit_potential(cfg, grid);
    in.q_init = cfg.get_double("audit.q_init", 0.0);
    in.terminal_is_goal = cfg.get_bool("audit.terminal_is_goal", true);
    const bool goal_directed = grid.reward_mode == RewardMode::GoalDirected;
    in.r_g = cfg.get_double("audit.r_g", goal_directed ? 1.0 : -1.0);
    in.r_inf = cfg.get_double("audit.r_inf", goal_directed ? 0.0 : -1.0);

    std::vector<Transition> transitions;
    if (transitions_path.empty()) {
        // exhaustive enumeration of the tabular MDP
        transitions = gridworld_mdp(grid, in.spec.gamma).all_transitions();
    } else {
        std::ifstream f(transitions_path);
        if (!f) throw ConfigError("cannot open transition log: " + transitions_path);
        transitions = read_transition_csv(f);
    }

    const AuditReport report = audit_transitions(in, transitions);
    std::ofstream f(out_path);
    write_verdict_csv(f, transitions, report);
    std::cout << report.summary();
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

int cmd_solve(const std::string& config_path, const std::string& out_path) {
    const Config cfg = Config::parse_file(config_path);
    cfg.require_known_keys(kSolveKeys);
    if (cfg.get_string("env.name") != "gridworld")
        throw ConfigError("solve: only gridworld configs are supported");
    GridworldConfig grid;
    grid.width = static_cast<int>(cfg.get_long("env.width", 25));
    grid.height = static_cast<int>(cfg.get_long("env.height", 25));
    grid.reward_mode = reward_mode_from_string(cfg.get_string("env.reward_mode", "goal_directed"));
    grid.max_steps = static_cast<int>(cfg.get_long("env.max_steps", 250));
    grid.validate();
    const double gamma = cfg.get_double("agent.gamma", 0.95);
    const ValueSolution sol = value_iteration(gridworld_mdp(grid, gamma),
                                              cfg.get_double("solve.tol", 1e-10),
                                              cfg.get_long("solve.max_iters", 1000000));
    std::ofstream f(out_path);
    write_value_csv(f, sol, "config: " + cfg.render());
    std::cout << "residual " << format_double(sol.residual) << " after " << sol.iterations
              << " sweeps\nwrote " << out_path << '\n';
    return 0;
}

int cmd_surface(const std::string& config_path, const std::string& out_path) {
    const Config cfg = Config::parse_file(config_path);
    cfg.require_known_keys(kSurfaceKeys);
    const double gamma = cfg.get_double("surface.gamma", 0.75);
    const auto phi = linspace(cfg.get_double("surface.phi_min", 0.0),
                              cfg.get_double("surface.phi_max", 1.0),
                              cfg.get_long("surface.phi_steps", 11));
    const auto delta = linspace(cfg.get_double("surface.delta_min", -1.0),
                                cfg.get_double("surface.delta_max", 1.0),
                                cfg.get_long("surface.delta_steps", 81));

    std::vector<SurfaceRow> rows = shaping_surface(std::nullopt, gamma, phi, delta);
    if (cfg.has("surface.exp_bases")) {
        for (double base : cfg.get_double_list("surface.exp_bases")) {
            const auto more = shaping_surface(base, gamma, phi, delta);
            rows.insert(rows.end(), more.begin(), more.end());
        }
    }
    std::ofstream f(out_path);
    write_surface_csv(f, rows, "config: " + cfg.render());
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& out_path,
             const std::string& title) {
    std::vector<SvgSeries> series;
    for (const auto& path : csv_paths) {
        std::ifstream f(path);
        if (!f) throw ConfigError("cannot open curve: " + path);
        SvgSeries s;
        s.curve = read_curve_csv(f);
        // label: file stem without the curve_ prefix
        std::string stem = path;
        if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
            stem = stem.substr(slash + 1);
        if (const auto dot = stem.rfind(".csv"); dot != std::string::npos)
            stem = stem.substr(0, dot);
        if (stem.rfind("curve_", 0) == 0) stem = stem.substr(6);
        s.label = stem;
        series.push_back(std::move(s));
    }
    SvgStyle style;
    style.title = title;
    std::ofstream f(out_path);
    f << render_svg(series, style);
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"potential-based reward shaping toolkit"};
    app.require_subcommand(1);

    std::string config_path, transitions_path, out_path, title;
    std::vector<std::string> csv_paths;
    bool desk_scale = false;
    long seed_offset = 0;

    auto* run = app.add_subcommand("run", "train per the experiment config and emit curves");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_flag("--desk-scale", desk_scale, "apply the documented scale-down factors");
    run->add_option("--seed-offset", seed_offset, "offset added to every seed");

    auto* audit = app.add_subcommand("audit", "first-update analysis of shaped rewards");
    audit->add_option("config", config_path, "audit config file")->required();
    audit->add_option("transitions", transitions_path,
                      "transition log CSV (omit to enumerate the tabular MDP)");
    audit->add_option("-o,--out", out_path, "verdict CSV path")->default_val("verdicts.csv");

    auto* solve = app.add_subcommand("solve", "value iteration on the configured gridworld");
    solve->add_option("config", config_path, "solve config file")->required();
    solve->add_option("-o,--out", out_path, "value CSV path")->default_val("vstar.csv");

    auto* surface = app.add_subcommand("surface", "shaping reward F(delta, phi) table");
    surface->add_option("config", config_path, "surface config file")->required();
    surface->add_option("-o,--out", out_path, "surface CSV path")->default_val("surface.csv");

    auto* plot = app.add_subcommand("plot", "SVG line chart from aggregate curve CSVs");
    plot->add_option("csv", csv_paths, "curve CSV files")->required();
    plot->add_option("-o,--out", out_path, "SVG path")->required();
    plot->add_option("--title", title, "chart title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, desk_scale, seed_offset);
        if (audit->parsed()) return cmd_audit(config_path, transitions_path, out_path);
        if (solve->parsed()) return cmd_solve(config_path, out_path);
        if (surface->parsed()) return cmd_surface(config_path, out_path);
        if (plot->parsed()) return cmd_plot(csv_paths, out_path, title);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
