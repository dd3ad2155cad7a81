#include "pbrs/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace pbrs {

Transition mountain_car_step(const MountainCarConfig& cfg, const State& s, int action) {
    if (s.features.size() != 2)
        throw ContractViolation("mountain_car_step: state must have 2 features");
    if (action < 0 || action > 2)
        throw ContractViolation("mountain_car_step: action out of range");
    const double pos = s.features[0];
    const double vel = s.features[1];

    const double dir = static_cast<double>(action - 1);
    double new_vel = vel + dir * cfg.force - std::cos(3.0 * pos) * cfg.gravity;
    new_vel = std::clamp(new_vel, -cfg.max_velocity, cfg.max_velocity);
    double new_pos = pos + new_vel;
    new_pos = std::clamp(new_pos, cfg.min_position, cfg.max_position);
    if (new_pos <= cfg.min_position && new_vel < 0.0) new_vel = 0.0;

    if (!std::isfinite(new_pos) || !std::isfinite(new_vel))
        throw NumericFault("mountain_car_step: non-finite state");

    Transition t;
    t.s = s;
    t.a = action;
    t.s_next = State::continuous({new_pos, new_vel});
    t.kind = new_pos >= cfg.goal_position ? TerminationKind::Terminal
                                          : TerminationKind::NonTerminal;
    t.r = -1.0;
    return t;
}

MountainCarEnv::MountainCarEnv(MountainCarConfig cfg) : cfg_(cfg) {
    state_ = State::continuous({cfg_.start_min, 0.0});
}

State MountainCarEnv::reset(RngStream& rng) {
    state_ = State::continuous({rng.uniform(cfg_.start_min, cfg_.start_max), 0.0});
    steps_ = 0;
    return state_;
}

Transition MountainCarEnv::step(int action) {
    Transition t = mountain_car_step(cfg_, state_, action);
    ++steps_;
    if (t.kind == TerminationKind::NonTerminal && steps_ >= cfg_.max_steps)
        t.kind = TerminationKind::Truncated;
    state_ = t.s_next;
    return t;
}

std::unique_ptr<Environment> MountainCarEnv::clone() const {
    return std::make_unique<MountainCarEnv>(cfg_);
}

}  // namespace pbrs
