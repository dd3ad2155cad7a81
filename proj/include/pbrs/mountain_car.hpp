#pragma once

#include "pbrs/env.hpp"

namespace pbrs {

// Classic mountain-car task. Observation is [position, velocity]. Reward is
// -1 every step; the episode terminates when position reaches the goal and
// truncates after max_steps. Velocity and position are clamped to their
// bounds; hitting the left wall zeroes a leftward velocity.
struct MountainCarConfig {
    double force = 0.001;
    double gravity = 0.0025;
    double max_velocity = 0.07;
    double min_position = -1.2;
    double max_position = 0.6;
    double goal_position = 0.5;
    double start_min = -0.6;
    double start_max = -0.4;
    int max_steps = 200;
};

// Pure dynamics. Actions: 0 = accelerate left, 1 = coast, 2 = accelerate
// right. s must hold 2 finite features and be non-terminal.
Transition mountain_car_step(const MountainCarConfig& cfg, const State& s, int action);

class MountainCarEnv final : public Environment {
public:
    explicit MountainCarEnv(MountainCarConfig cfg = {});

    State reset(RngStream& rng) override;
    Transition step(int action) override;
    int action_count() const override { return 3; }
    int observation_dim() const override { return 2; }
    int max_steps() const override { return cfg_.max_steps; }
    const State& current() const override { return state_; }
    std::unique_ptr<Environment> clone() const override;

    const MountainCarConfig& config() const { return cfg_; }

private:
    MountainCarConfig cfg_;
    State state_;
    int steps_ = 0;
};

}  // namespace pbrs
