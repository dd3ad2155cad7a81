#pragma once

#include <optional>
#include <vector>

#include "pbrs/types.hpp"

namespace pbrs {

enum class PotentialBase {
    Constant,        // fixed scalar
    ManhattanToGoal, // -d(s, goal) on a grid; normalized: 1 - d/d_max
    NegAbsPoleAngle, // -|angle|; normalized: 1 - |angle|/angle_limit
    AbsCarVelocity,  // |velocity|; normalized: |velocity|/velocity_limit
    OracleVStar,     // table lookup of per-state values
};

const char* to_string(PotentialBase b);

// Composable potential function description. Evaluation pipeline for a
// non-terminal state: base value, optional normalization into [0,1],
// optional exponential transform exp_base^phi, then the constant offset
// bias/(gamma-1) that shifts every non-terminal shaped reward by `bias`.
// Terminal and truncating states always evaluate to zero.
struct PotentialSpec {
    PotentialBase base = PotentialBase::Constant;
    double constant_value = 0.0;

    // ManhattanToGoal geometry.
    int grid_width = 0, grid_height = 0;
    int goal_x = 0, goal_y = 0;

    double angle_limit = 0.0;     // NegAbsPoleAngle
    double velocity_limit = 0.0;  // AbsCarVelocity

    std::vector<double> oracle_values;  // OracleVStar, indexed by state

    bool normalize = false;
    // Maps the exponential transform's output range [1, exp_base] back onto
    // [0, 1] so the potential scale stays compatible with unit goal rewards.
    // Requires exp_base.
    bool renormalize = false;
    double bias = 0.0;
    std::optional<double> exp_base;
    double gamma = 0.99;
};

struct ShapedReward {
    double original_r = 0.0;
    double f = 0.0;
    double shaped_r = 0.0;
};

double potential(const PotentialSpec& spec, const State& s,
                 bool is_terminal_or_truncating);

// F(s, a, s') = gamma * phi(s') - phi(s). s must be non-terminal.
double shaping_term(const PotentialSpec& spec, const State& s, const State& s_next,
                    bool next_is_terminal_or_truncating);

// R'(s, a, s') = R(s, a, s') + F(s, a, s'). The final potential is zeroed
// whenever the transition ends the episode, truncation included.
ShapedReward shaped_reward(const PotentialSpec& spec, const Transition& t);

// The bias that removes the dependence of non-terminal shaped rewards on the
// step reward and the initial Q-values: (1 - gamma) * q_init - r_inf.
double recommended_bias(double gamma, double q_init, double r_inf);

// Table-backed potential phi(s) = values[s] for non-terminal s, 0 at
// terminals. values must cover every non-terminal state of the environment.
PotentialSpec vstar_potential(std::vector<double> oracle_values, double gamma);

}  // namespace pbrs
