#include "pbrs/env.hpp"

#include <cmath>
#include <stdexcept>

namespace pbrs {

double discounted_return(std::span<const double> rewards, double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("discounted_return: gamma must be in [0, 1]");
    double acc = 0.0;
    for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) {
        if (!std::isfinite(*it))
            throw std::invalid_argument("discounted_return: non-finite reward");
        acc = *it + gamma * acc;
    }
    return acc;
}

std::vector<Transition> run_episode(Environment& env, const Policy& policy,
                                    long max_steps, RngStream& rng) {
    if (max_steps < 1) throw std::invalid_argument("run_episode: max_steps must be >= 1");
    std::vector<Transition> log;
    State s = env.reset(rng);
    for (long step = 0; step < max_steps; ++step) {
        const int a = policy(s, rng);
        if (a < 0 || a >= env.action_count())
            throw ContractViolation("run_episode: policy returned out-of-range action");
        Transition t = env.step(a);
        s = t.s_next;
        const bool cap_hit = step + 1 == max_steps;
        if (cap_hit && t.kind == TerminationKind::NonTerminal)
            t.kind = TerminationKind::Truncated;
        log.push_back(std::move(t));
        if (log.back().ends_episode()) break;
    }
    return log;
}

}  // namespace pbrs
