#pragma once

#include "pbrs/env.hpp"

namespace pbrs {

// Classic cart-pole balancing task, Euler-integrated. Observation is
// [position, velocity, angle, angular velocity]. Reward is +1 every step;
// the episode terminates when |angle| or |position| exceeds its limit and
// truncates after max_steps.
struct CartPoleConfig {
    double gravity = 9.8;
    double cart_mass = 1.0;
    double pole_mass = 0.1;
    double half_length = 0.5;
    double force_mag = 10.0;
    double tau = 0.02;
    double angle_limit = 12.0 * 3.14159265358979323846 / 180.0;
    double position_limit = 2.4;
    double start_range = 0.05;  // each component uniform in +-start_range
    int max_steps = 500;
};

// Pure dynamics. Actions: 0 = push left, 1 = push right. s must hold 4
// finite features and be non-terminal; never reports Truncated.
Transition cartpole_step(const CartPoleConfig& cfg, const State& s, int action);

class CartPoleEnv final : public Environment {
public:
    explicit CartPoleEnv(CartPoleConfig cfg = {});

    State reset(RngStream& rng) override;
    Transition step(int action) override;
    int action_count() const override { return 2; }
    int observation_dim() const override { return 4; }
    int max_steps() const override { return cfg_.max_steps; }
    const State& current() const override { return state_; }
    std::unique_ptr<Environment> clone() const override;

    const CartPoleConfig& config() const { return cfg_; }

private:
    CartPoleConfig cfg_;
    State state_;
    int steps_ = 0;
};

}  // namespace pbrs
