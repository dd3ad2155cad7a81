#pragma once

#include <functional>
#include <iosfwd>
#include <optional>

#include "pbrs/curve.hpp"
#include "pbrs/env.hpp"
#include "pbrs/potential.hpp"

namespace pbrs {

struct QTable {
    int n_states = 0;
    int n_actions = 0;
    double q_init = 0.0;
    std::vector<double> values;  // (s * n_actions + a)

    QTable(int states, int actions, double init)
        : n_states(states), n_actions(actions), q_init(init),
          values(static_cast<std::size_t>(states) * actions, init) {}

    double& at(int s, int a) { return values[static_cast<std::size_t>(s) * n_actions + a]; }
    double at(int s, int a) const { return values[static_cast<std::size_t>(s) * n_actions + a]; }
    double row_max(int s) const;
    // Exact-tie argmax set, appended to out (out is cleared first).
    void argmax_set(int s, std::vector<int>& out) const;
};

void write_qtable_csv(std::ostream& out, const QTable& q, const std::string& header_comment);

struct QLearnConfig {
    double alpha = 0.1;
    double epsilon = 0.05;
    double gamma = 0.95;
    double q_init = 0.0;
    long train_steps = 100000;
    long eval_interval = 250;  // 0 disables evaluation
    int n_eval = 10;
    double eval_epsilon = 0.05;
    // Truncation is not environmental death, so the Q-target at a Truncated
    // step bootstraps from the next state by default; set this to treat
    // truncation like termination for the bootstrap instead. The shaping term
    // zeroes the final potential in either case.
    bool zero_bootstrap_on_truncation = false;
};

// One TD update with the (already shaped) reward; returns the new entry.
// The bootstrap is zero on Terminal transitions.
double q_update(QTable& q, const Transition& t, double shaped_r, const QLearnConfig& cfg);

// With probability epsilon a uniform action, otherwise a uniform pick among
// the exact-tie maximizers. The tie-break consumes one draw even when the
// maximizer is unique so paired runs keep their streams aligned.
int epsilon_greedy(const QTable& q, int s, double epsilon, RngStream& rng);

// Per-step hook: 1-based step count, the transition taken, the reward used
// for the update, and the table after the update.
using StepObserver =
    std::function<void(long, const Transition&, double, const QTable&)>;

struct TabularResult {
    QTable q;
    std::vector<EvalPoint> curve;
};

// Tabular Q-learning for cfg.train_steps environment steps (episodes reset
// inline). Every eval_interval steps, training pauses and n_eval episodes run
// with eval_epsilon on an isolated RNG sub-stream without touching the table;
// recorded returns use original (unshaped) rewards, undiscounted.
TabularResult train_tabular(Environment& env, const std::optional<PotentialSpec>& spec,
                            const QLearnConfig& cfg, RngStream rng,
                            const StepObserver& observer = nullptr);

// No shaping; the table starts at q_init + phi(s) for every action instead.
TabularResult train_tabular_qinit_shifted(Environment& env, const PotentialSpec& spec,
                                          const QLearnConfig& cfg, RngStream rng,
                                          const StepObserver& observer = nullptr);

}  // namespace pbrs
