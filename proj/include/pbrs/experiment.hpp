#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pbrs/cartpole.hpp"
#include "pbrs/config.hpp"
#include "pbrs/curve.hpp"
#include "pbrs/dqn.hpp"
#include "pbrs/gridworld.hpp"
#include "pbrs/mountain_car.hpp"
#include "pbrs/qlearning.hpp"
#include "pbrs/tabular_mdp.hpp"

namespace pbrs {

// Fully resolved experiment description; see README for the key reference.
struct ExperimentConfig {
    std::string env_name;  // gridworld | cartpole | mountaincar
    GridworldConfig grid;
    CartPoleConfig cartpole;
    MountainCarConfig mountain_car;

    std::string agent;  // tabular | tabular-qinit-shifted | dqn
    QLearnConfig qlearn;
    DQNConfig dqn;
    double gamma = 0.95;

    std::string potential_base = "none";
    bool potential_normalize = false;
    bool potential_renormalize = false;
    double potential_constant = 0.0;
    std::optional<double> exp_base;

    std::vector<double> bias_list;  // one training arm per bias
    bool include_unshaped = false;
    std::vector<long> seeds;
    long train_steps = 0;
    std::string out_dir = "out";
    std::string transition_log;  // optional path, first arm/seed only

    std::unique_ptr<Environment> make_env() const;
    // Potential bound to this experiment's environment, with the given bias.
    PotentialSpec make_potential(double bias) const;
};

ExperimentConfig resolve_experiment(const Config& cfg);

// Documented scale-down: 11x11 grids, 40k tabular / 60k deep training steps,
// first 3 seeds, deep target-net copies every 2k steps.
void apply_desk_scale(Config& cfg);

struct ArmResult {
    std::string label;
    std::vector<long> seeds;                     // seeds that completed
    std::vector<std::vector<EvalPoint>> curves;  // aligned with seeds
    LearningCurve aggregate;
};

struct ExperimentOutput {
    std::vector<ArmResult> arms;
    std::vector<std::string> files_written;
    std::vector<std::string> excluded_runs;  // "arm/seed: reason"
    std::vector<std::string> notes;          // per-run diagnostics (metadata file)
};

// One training run per (arm x seed); per-seed and aggregate CSVs plus a
// metadata file go to out_dir. Identical configs produce identical bytes.
ExperimentOutput run_experiment(const Config& cfg, long seed_offset = 0);

}  // namespace pbrs
