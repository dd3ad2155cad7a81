#include "pbrs/cartpole.hpp"

#include <cmath>

namespace pbrs {

Transition cartpole_step(const CartPoleConfig& cfg, const State& s, int action) {
    if (s.features.size() != 4)
        throw ContractViolation("cartpole_step: state must have 4 features");
    if (action != 0 && action != 1)
        throw ContractViolation("cartpole_step: action out of range");
    const double x = s.features[0];
    const double x_dot = s.features[1];
    const double theta = s.features[2];
    const double theta_dot = s.features[3];

    const double force = action == 1 ? cfg.force_mag : -cfg.force_mag;
    const double total_mass = cfg.cart_mass + cfg.pole_mass;
    const double pole_mass_length = cfg.pole_mass * cfg.half_length;
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);

    const double temp = (force + pole_mass_length * theta_dot * theta_dot * sin_t) / total_mass;
    const double theta_acc =
        (cfg.gravity * sin_t - cos_t * temp) /
        (cfg.half_length * (4.0 / 3.0 - cfg.pole_mass * cos_t * cos_t / total_mass));
    const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

    Transition t;
    t.s = s;
    t.a = action;
    t.s_next = State::continuous({x + cfg.tau * x_dot,
                                  x_dot + cfg.tau * x_acc,
                                  theta + cfg.tau * theta_dot,
                                  theta_dot + cfg.tau * theta_acc});
    for (double f : t.s_next.features)
        if (!std::isfinite(f)) throw NumericFault("cartpole_step: non-finite state");

    const bool failed = std::abs(t.s_next.features[2]) > cfg.angle_limit ||
                        std::abs(t.s_next.features[0]) > cfg.position_limit;
    t.kind = failed ? TerminationKind::Terminal : TerminationKind::NonTerminal;
    t.r = 1.0;
    return t;
}

CartPoleEnv::CartPoleEnv(CartPoleConfig cfg) : cfg_(cfg) {
    state_ = State::continuous({0.0, 0.0, 0.0, 0.0});
}

State CartPoleEnv::reset(RngStream& rng) {
    state_ = State::continuous({rng.uniform(-cfg_.start_range, cfg_.start_range),
                                rng.uniform(-cfg_.start_range, cfg_.start_range),
                                rng.uniform(-cfg_.start_range, cfg_.start_range),
                                rng.uniform(-cfg_.start_range, cfg_.start_range)});
    steps_ = 0;
    return state_;
}

Transition CartPoleEnv::step(int action) {
    Transition t = cartpole_step(cfg_, state_, action);
    ++steps_;
    if (t.kind == TerminationKind::NonTerminal && steps_ >= cfg_.max_steps)
        t.kind = TerminationKind::Truncated;
    state_ = t.s_next;
    return t;
}

std::unique_ptr<Environment> CartPoleEnv::clone() const {
    return std::make_unique<CartPoleEnv>(cfg_);
}

}  // namespace pbrs
