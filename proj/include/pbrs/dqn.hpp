#pragma once

#include <functional>
#include <optional>

#include "pbrs/adam.hpp"
#include "pbrs/curve.hpp"
#include "pbrs/env.hpp"
#include "pbrs/mlp.hpp"
#include "pbrs/potential.hpp"
#include "pbrs/replay.hpp"

namespace pbrs {

struct DQNConfig {
    double lr = 1e-4;
    int batch = 32;
    std::size_t buffer = 50000;
    double gamma = 0.99;
    double eps_start = 1.0;
    double eps_end = 0.05;
    long eps_decay_steps = 10000;
    long learning_starts = 1000;
    int train_freq = 4;
    int grad_steps = 1;
    long target_update_interval = 10000;
    int hidden = 64;
    long eval_interval = 500;  // 0 disables evaluation
    int n_eval = 5;
    // Whether storage-time shaping zeroes the potential of the state a
    // truncation lands in. Off by default: the learner bootstraps through
    // timeouts, so shaping stays relative to the continuing task and the
    // step cap leaves no spurious reward spike.
    bool truncation_zero_potential = false;
    // Positive values select a Huber loss of that width instead of the
    // default mean squared error; squared error propagates the large shaped
    // ending rewards much faster at short budgets.
    double huber_delta = 0.0;
    // L2 gradient-norm clip applied before each optimizer step; 0 disables.
    double max_grad_norm = 10.0;
};

// Mean TD error over the sampled batch, with the gradient of the online net
// accumulated into grad_out (which must be zeroed by the caller). Target:
// y = r + gamma * max_a Q_target(s', a), the gamma-term dropped on Terminal
// transitions (Truncated still bootstraps). huber_delta > 0 selects the
// Huber loss of that width; huber_delta = 0 the squared error.
double td_loss(const MLPQNet& net, const MLPQNet& target_net, const ReplayBuffer& buf,
               std::span<const std::size_t> batch_idx, double gamma,
               std::span<double> grad_out, double huber_delta = 0.0);

struct DQNResult {
    std::vector<EvalPoint> curve;
    MLPQNet net;
    // Q-value range of the untrained net over randomly sampled valid states.
    double initial_q_min = 0.0;
    double initial_q_max = 0.0;
};

// Called after every environment step with the online and target nets and
// the replay buffer; used by tests and diagnostics.
using DQNStepHook =
    std::function<void(long, const MLPQNet&, const MLPQNet&, const ReplayBuffer&)>;

// Standard DQN loop: epsilon-greedy acting on the online net (linear epsilon
// decay), shaped transitions stored in replay, Adam updates every train_freq
// steps after learning_starts, online->target copies every
// target_update_interval steps, greedy evaluation episodes every
// eval_interval steps on an isolated RNG sub-stream. A non-finite loss
// aborts the run with a NumericFault.
DQNResult train_dqn(Environment& env, const std::optional<PotentialSpec>& spec,
                    const DQNConfig& cfg, long total_steps, RngStream rng,
                    const DQNStepHook& hook = nullptr);

// Q-value range over states sampled from resets and short random rollouts.
std::pair<double, double> probe_q_range(const MLPQNet& net, Environment& env,
                                        int n_samples, RngStream& rng);

}  // namespace pbrs
