#include "pbrs/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace pbrs {

namespace {

const std::set<std::string> kKnownKeys = {
    "env.name", "env.width", "env.height", "env.reward_mode", "env.max_steps",
    "agent.name", "agent.gamma", "agent.alpha", "agent.epsilon", "agent.eval_epsilon",
    "agent.q_init", "agent.zero_bootstrap_on_truncation",
    "potential.base", "potential.constant", "potential.normalize",
    "potential.renormalize", "potential.bias", "potential.exp_base",
    "run.seeds", "run.train_steps", "run.eval_interval", "run.n_eval",
    "run.bias_list", "run.include_unshaped", "run.transition_log",
    "dqn.lr", "dqn.batch", "dqn.buffer", "dqn.eps_start", "dqn.eps_end",
    "dqn.eps_decay_steps", "dqn.learning_starts", "dqn.train_freq", "dqn.grad_steps",
    "dqn.target_update_interval", "dqn.hidden", "dqn.max_grad_norm",
    "dqn.huber_delta", "dqn.truncation_zero_potential",
    "output.dir",
};

std::string arm_label(bool shaped, double bias) {
    return shaped ? "bias_" + format_double(bias) : "unshaped";
}

}  // namespace

std::unique_ptr<Environment> ExperimentConfig::make_env() const {
    if (env_name == "gridworld") return std::make_unique<GridworldEnv>(grid);
    if (env_name == "cartpole") return std::make_unique<CartPoleEnv>(cartpole);
    if (env_name == "mountaincar") return std::make_unique<MountainCarEnv>(mountain_car);
    throw ConfigError("unknown env.name: " + env_name);
}

PotentialSpec ExperimentConfig::make_potential(double bias) const {
    PotentialSpec spec;
    spec.gamma = gamma;
    spec.bias = bias;
    spec.normalize = potential_normalize;
    spec.renormalize = potential_renormalize;
    spec.exp_base = exp_base;

    if (potential_base == "constant") {
        spec.base = PotentialBase::Constant;
        spec.constant_value = potential_constant;
    } else if (potential_base == "manhattan") {
        if (env_name != "gridworld")
            throw ConfigError("potential.base=manhattan requires env.name=gridworld");
        spec.base = PotentialBase::ManhattanToGoal;
        spec.grid_width = grid.width;
        spec.grid_height = grid.height;
        spec.goal_x = grid.resolved_goal_x();
        spec.goal_y = grid.resolved_goal_y();
    } else if (potential_base == "pole_angle") {
        if (env_name != "cartpole")
            throw ConfigError("potential.base=pole_angle requires env.name=cartpole");
        spec.base = PotentialBase::NegAbsPoleAngle;
        spec.angle_limit = cartpole.angle_limit;
    } else if (potential_base == "car_velocity") {
        if (env_name != "mountaincar")
            throw ConfigError("potential.base=car_velocity requires env.name=mountaincar");
        spec.base = PotentialBase::AbsCarVelocity;
        spec.velocity_limit = mountain_car.max_velocity;
    } else if (potential_base == "vstar") {
        if (env_name != "gridworld")
            throw ConfigError("potential.base=vstar requires env.name=gridworld");
        const ValueSolution sol = value_iteration(gridworld_mdp(grid, gamma));
        spec = vstar_potential(sol.v_star, gamma);
        spec.bias = bias;
        spec.exp_base = exp_base;
        spec.renormalize = potential_renormalize;
    } else {
        throw ConfigError("unknown potential.base: " + potential_base);
    }
    return spec;
}

ExperimentConfig resolve_experiment(const Config& cfg) {
    cfg.require_known_keys(kKnownKeys);

    ExperimentConfig ec;
    ec.env_name = cfg.get_string("env.name");
    ec.agent = cfg.get_string("agent.name");
    const bool deep = ec.agent == "dqn";
    ec.gamma = cfg.get_double("agent.gamma", deep ? 0.99 : 0.95);

    if (ec.env_name == "gridworld") {
        ec.grid.width = static_cast<int>(cfg.get_long("env.width", 25));
        ec.grid.height = static_cast<int>(cfg.get_long("env.height", 25));
        ec.grid.reward_mode =
            reward_mode_from_string(cfg.get_string("env.reward_mode", "goal_directed"));
        ec.grid.max_steps = static_cast<int>(cfg.get_long("env.max_steps", 250));
        ec.grid.validate();
    } else if (ec.env_name == "cartpole") {
        ec.cartpole.max_steps = static_cast<int>(cfg.get_long("env.max_steps", 500));
    } else if (ec.env_name == "mountaincar") {
        ec.mountain_car.max_steps = static_cast<int>(cfg.get_long("env.max_steps", 200));
    } else {
        throw ConfigError("unknown env.name: " + ec.env_name);
    }

    if (ec.agent == "tabular" || ec.agent == "tabular-qinit-shifted") {
        if (ec.env_name != "gridworld")
            throw ConfigError("tabular agents require env.name=gridworld");
        ec.qlearn.alpha = cfg.get_double("agent.alpha", 0.1);
        ec.qlearn.epsilon = cfg.get_double("agent.epsilon", 0.05);
        ec.qlearn.eval_epsilon = cfg.get_double("agent.eval_epsilon", 0.05);
        ec.qlearn.gamma = ec.gamma;
        ec.qlearn.q_init = cfg.get_double("agent.q_init", 0.0);
        ec.qlearn.eval_interval = cfg.get_long("run.eval_interval", 250);
        ec.qlearn.n_eval = static_cast<int>(cfg.get_long("run.n_eval", 10));
        ec.qlearn.zero_bootstrap_on_truncation =
            cfg.get_bool("agent.zero_bootstrap_on_truncation", false);
    } else if (deep) {
        ec.dqn.gamma = ec.gamma;
        ec.dqn.lr = cfg.get_double("dqn.lr", 1e-4);
        ec.dqn.batch = static_cast<int>(cfg.get_long("dqn.batch", 32));
        ec.dqn.buffer = static_cast<std::size_t>(cfg.get_long("dqn.buffer", 50000));
        ec.dqn.eps_start = cfg.get_double("dqn.eps_start", 1.0);
        ec.dqn.eps_end = cfg.get_double("dqn.eps_end", 0.05);
        ec.dqn.eps_decay_steps = cfg.get_long("dqn.eps_decay_steps", 10000);
        ec.dqn.learning_starts = cfg.get_long("dqn.learning_starts", 1000);
        ec.dqn.train_freq = static_cast<int>(cfg.get_long("dqn.train_freq", 4));
        ec.dqn.grad_steps = static_cast<int>(cfg.get_long("dqn.grad_steps", 1));
        ec.dqn.target_update_interval = cfg.get_long("dqn.target_update_interval", 10000);
        ec.dqn.hidden = static_cast<int>(cfg.get_long("dqn.hidden", 64));
        ec.dqn.max_grad_norm = cfg.get_double("dqn.max_grad_norm", 10.0);
        ec.dqn.huber_delta = cfg.get_double("dqn.huber_delta", 0.0);
        ec.dqn.truncation_zero_potential =
            cfg.get_bool("dqn.truncation_zero_potential", false);
        ec.dqn.eval_interval = cfg.get_long("run.eval_interval", 500);
        ec.dqn.n_eval = static_cast<int>(cfg.get_long("run.n_eval", 5));
    } else {
        throw ConfigError("unknown agent.name: " + ec.agent);
    }

    ec.potential_base = cfg.get_string("potential.base", "none");
    ec.potential_normalize = cfg.get_bool("potential.normalize", false);
    ec.potential_renormalize = cfg.get_bool("potential.renormalize", false);
    ec.potential_constant = cfg.get_double("potential.constant", 0.0);
    if (cfg.has("potential.exp_base")) ec.exp_base = cfg.get_double("potential.exp_base");

    if (ec.potential_base != "none") {
        if (cfg.has("run.bias_list"))
            ec.bias_list = cfg.get_double_list("run.bias_list");
        else
            ec.bias_list = {cfg.get_double("potential.bias", 0.0)};
    } else if (cfg.has("run.bias_list") || cfg.has("potential.bias")) {
        throw ConfigError("potential.bias set but potential.base is none");
    }
    ec.include_unshaped =
        cfg.get_bool("run.include_unshaped", ec.potential_base == "none");
    if (ec.agent == "tabular-qinit-shifted" &&
        (ec.potential_base == "none" || ec.include_unshaped))
        throw ConfigError("tabular-qinit-shifted requires a potential and no unshaped arm");

    ec.seeds = cfg.get_long_list("run.seeds");
    if (ec.seeds.empty()) throw ConfigError("run.seeds must be non-empty");
    ec.train_steps = cfg.get_long("run.train_steps");
    ec.qlearn.train_steps = ec.train_steps;
    ec.out_dir = cfg.get_string("output.dir", "out");
    ec.transition_log = cfg.get_string("run.transition_log", "");
    if (!ec.transition_log.empty() && deep)
        throw ConfigError("run.transition_log is only recorded for tabular agents");
    return ec;
}

void apply_desk_scale(Config& cfg) {
    const std::string env = cfg.get_string("env.name", "");
    const std::string agent = cfg.get_string("agent.name", "");
    if (env == "gridworld") {
        cfg.set("env.width", "11");
        cfg.set("env.height", "11");
    }
    if (agent == "dqn") {
        cfg.set("run.train_steps", "60000");
        cfg.set("dqn.target_update_interval", "2000");
    } else {
        cfg.set("run.train_steps", "40000");
    }
    auto seeds = cfg.get_long_list("run.seeds");
    if (seeds.size() > 3) {
        std::string trimmed;
        for (int i = 0; i < 3; ++i)
            trimmed += (i ? "," : "") + std::to_string(seeds[i]);
        cfg.set("run.seeds", trimmed);
    }
}

ExperimentOutput run_experiment(const Config& cfg, long seed_offset) {
    const ExperimentConfig ec = resolve_experiment(cfg);
    std::filesystem::create_directories(ec.out_dir);

    struct Arm {
        std::string label;
        std::optional<PotentialSpec> spec;
    };
    std::vector<Arm> arms;
    if (ec.include_unshaped) arms.push_back({arm_label(false, 0.0), std::nullopt});
    if (ec.potential_base != "none")
        for (double b : ec.bias_list) arms.push_back({arm_label(true, b), ec.make_potential(b)});
    if (arms.empty()) throw ConfigError("experiment has no arms");

    ExperimentOutput out;
    const std::string provenance =
        "config: " + cfg.render() + (seed_offset ? "; seed_offset=" + std::to_string(seed_offset) : "");

    bool first_run = true;
    for (const Arm& arm : arms) {
        ArmResult result;
        result.label = arm.label;
        for (long seed : ec.seeds) {
            const long run_seed = seed + seed_offset;
            RngStream rng(static_cast<std::uint64_t>(run_seed));
            auto env = ec.make_env();
            std::vector<EvalPoint> curve;
            try {
                if (ec.agent == "dqn") {
                    DQNResult r = train_dqn(*env, arm.spec, ec.dqn, ec.train_steps, rng);
                    out.notes.push_back(arm.label + "/seed" + std::to_string(run_seed) +
                                        ": initial Q range [" +
                                        format_double(r.initial_q_min) + ", " +
                                        format_double(r.initial_q_max) + "]");
                    curve = std::move(r.curve);
                } else {
                    StepObserver observer;
                    std::vector<Transition> log;
                    const bool want_log = first_run && !ec.transition_log.empty();
                    if (want_log)
                        observer = [&log](long, const Transition& t, double, const QTable&) {
                            log.push_back(t);
                        };
                    TabularResult r =
                        ec.agent == "tabular-qinit-shifted"
                            ? train_tabular_qinit_shifted(*env, *arm.spec, ec.qlearn, rng,
                                                          observer)
                            : train_tabular(*env, arm.spec, ec.qlearn, rng, observer);
                    curve = std::move(r.curve);
                    if (want_log) {
                        std::ofstream f(ec.transition_log);
                        write_transition_csv(f, log);
                        out.files_written.push_back(ec.transition_log);
                    }
                }
            } catch (const NumericFault& e) {
                out.excluded_runs.push_back(arm.label + "/seed" + std::to_string(run_seed) +
                                            ": " + e.what());
                continue;
            }
            first_run = false;

            const std::string path = ec.out_dir + "/eval_" + arm.label + "_seed" +
                                     std::to_string(run_seed) + ".csv";
            std::ofstream f(path);
            write_eval_csv(f, curve, provenance + "; arm=" + arm.label +
                                         "; seed=" + std::to_string(run_seed));
            out.files_written.push_back(path);
            result.seeds.push_back(run_seed);
            result.curves.push_back(std::move(curve));
        }
        if (!result.curves.empty()) {
            result.aggregate = aggregate(result.curves);
            const std::string path = ec.out_dir + "/curve_" + arm.label + ".csv";
            std::ofstream f(path);
            std::string seed_list;
            for (long s : result.seeds) seed_list += (seed_list.empty() ? "" : ",") + std::to_string(s);
            write_curve_csv(f, result.aggregate,
                            provenance + "; arm=" + arm.label + "; seeds=" + seed_list);
            out.files_written.push_back(path);
        }
        out.arms.push_back(std::move(result));
    }

    const std::string meta_path = ec.out_dir + "/metadata.txt";
    std::ofstream meta(meta_path);
    meta << provenance << '\n';
    for (const auto& n : out.notes) meta << n << '\n';
    for (const auto& e : out.excluded_runs) meta << "excluded: " << e << '\n';
    out.files_written.push_back(meta_path);
    return out;
}

}  // namespace pbrs
