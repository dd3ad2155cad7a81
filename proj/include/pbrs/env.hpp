#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pbrs/rng.hpp"
#include "pbrs/types.hpp"

namespace pbrs {

// Episodic environment. One instance per training run; reset() starts a new
// episode, step() advances it and reports the transition. Termination is
// checked before truncation, so a Terminal flag always wins on the same step.
class Environment {
public:
    virtual ~Environment() = default;

    virtual State reset(RngStream& rng) = 0;
    virtual Transition step(int action) = 0;

    virtual int action_count() const = 0;
    // Number of tabular states, or 0 for continuous environments.
    virtual int state_count() const { return 0; }
    virtual int observation_dim() const { return 0; }
    // Per-episode step cap; reaching it truncates.
    virtual int max_steps() const = 0;
    virtual const State& current() const = 0;
    virtual std::unique_ptr<Environment> clone() const = 0;

    // Tabular environments only.
    virtual bool is_terminal_state(int /*index*/) const {
        throw ContractViolation("is_terminal_state: environment is not tabular");
    }
};

using Policy = std::function<int(const State&, RngStream&)>;

// Horner-evaluated sum of gamma^t * r_t. Rejects non-finite rewards.
double discounted_return(std::span<const double> rewards, double gamma);

// Runs one episode from a fresh reset. The final transition always carries
// Terminal or Truncated; if the harness cap max_steps fires before the
// environment ends the episode, the last transition is marked Truncated.
std::vector<Transition> run_episode(Environment& env, const Policy& policy,
                                    long max_steps, RngStream& rng);

}  // namespace pbrs
