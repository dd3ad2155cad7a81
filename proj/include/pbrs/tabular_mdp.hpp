#pragma once

#include <vector>

#include "pbrs/gridworld.hpp"
#include "pbrs/potential.hpp"

namespace pbrs {

// Deterministic finite MDP. Terminal states absorb with zero reward; their
// rows in next/reward are ignored by the solver.
struct TabularMDP {
    int n_states = 0;
    int n_actions = 0;
    double gamma = 0.99;
    std::vector<int> next;                     // (s * n_actions + a) -> s'
    std::vector<double> reward;                // (s * n_actions + a)
    std::vector<std::uint8_t> terminal_state;  // per state

    int idx(int s, int a) const { return s * n_actions + a; }
    void validate() const;

    // Every (s, a) transition from a non-terminal state, state-major.
    std::vector<Transition> all_transitions() const;
};

struct ValueSolution {
    std::vector<double> v_star;
    std::vector<double> q_star;             // (s * n_actions + a); 0 at terminals
    std::vector<std::vector<int>> policy;   // argmax set per state; empty at terminals
    double residual = 0.0;
    long iterations = 0;
};

struct ValueIterationError : std::runtime_error {
    double residual;
    ValueIterationError(const std::string& msg, double res)
        : std::runtime_error(msg), residual(res) {}
};

// Bellman optimality sweeps in state-major order until the sup-norm residual
// drops below tol. The argmax set keeps every action within tie_tol of the
// row maximum.
ValueSolution value_iteration(const TabularMDP& mdp, double tol = 1e-10,
                              long max_iters = 1000000, double tie_tol = 1e-9);

// Same dynamics, rewards replaced transition-wise by shaped rewards. The
// potential of a terminal successor contributes zero. spec.gamma must match.
TabularMDP shaped_mdp(const TabularMDP& mdp, const PotentialSpec& spec);

TabularMDP gridworld_mdp(const GridworldConfig& cfg, double gamma);

void write_value_csv(std::ostream& out, const ValueSolution& sol,
                     const std::string& header_comment);

}  // namespace pbrs
