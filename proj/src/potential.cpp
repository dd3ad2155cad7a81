#include "pbrs/potential.hpp"

#include <cmath>
#include <cstdlib>

namespace pbrs {

const char* to_string(PotentialBase b) {
    switch (b) {
        case PotentialBase::Constant: return "constant";
        case PotentialBase::ManhattanToGoal: return "manhattan";
        case PotentialBase::NegAbsPoleAngle: return "pole_angle";
        case PotentialBase::AbsCarVelocity: return "car_velocity";
        case PotentialBase::OracleVStar: return "vstar";
    }
    return "unknown";
}

namespace {

double base_value(const PotentialSpec& spec, const State& s) {
    switch (spec.base) {
        case PotentialBase::Constant:
            if (spec.normalize)
                throw ConfigError("potential: normalize is undefined for a constant base");
            return spec.constant_value;
        case PotentialBase::ManhattanToGoal: {
            if (!s.is_tabular())
                throw ContractViolation("potential: manhattan base needs a tabular state");
            if (spec.grid_width < 1 || spec.grid_height < 1)
                throw ConfigError("potential: manhattan base needs grid geometry");
            if (s.index >= spec.grid_width * spec.grid_height)
                throw ContractViolation("potential: state off-grid");
            const int x = s.index % spec.grid_width;
            const int y = s.index / spec.grid_width;
            const double d = std::abs(x - spec.goal_x) + std::abs(y - spec.goal_y);
            if (!spec.normalize) return -d;
            const double d_max = (spec.grid_width - 1) + (spec.grid_height - 1);
            return 1.0 - d / d_max;
        }
        case PotentialBase::NegAbsPoleAngle: {
            if (s.features.size() < 3)
                throw ContractViolation("potential: pole_angle base needs a 4-feature state");
            const double angle = std::abs(s.features[2]);
            if (!spec.normalize) return -angle;
            if (spec.angle_limit <= 0.0)
                throw ConfigError("potential: pole_angle normalization needs angle_limit > 0");
            return 1.0 - angle / spec.angle_limit;
        }
        case PotentialBase::AbsCarVelocity: {
            if (s.features.size() < 2)
                throw ContractViolation("potential: car_velocity base needs a 2-feature state");
            const double v = std::abs(s.features[1]);
            if (!spec.normalize) return v;
            if (spec.velocity_limit <= 0.0)
                throw ConfigError("potential: car_velocity normalization needs velocity_limit > 0");
            return v / spec.velocity_limit;
        }
        case PotentialBase::OracleVStar: {
            if (spec.normalize)
                throw ConfigError("potential: normalize is undefined for an oracle table base");
            if (!s.is_tabular())
                throw ContractViolation("potential: oracle table base needs a tabular state");
            if (s.index >= static_cast<int>(spec.oracle_values.size()))
                throw ConfigError("potential: oracle table does not cover state " +
                                  std::to_string(s.index));
            return spec.oracle_values[s.index];
        }
    }
    throw ContractViolation("potential: unknown base");
}

}  // namespace

double potential(const PotentialSpec& spec, const State& s,
                 bool is_terminal_or_truncating) {
    if (spec.bias != 0.0 && spec.gamma >= 1.0)
        throw ConfigError("potential: a bias requires gamma < 1");
    if (spec.exp_base && *spec.exp_base <= 1.0)
        throw ConfigError("potential: exp_base must be > 1");
    if (spec.renormalize && !spec.exp_base)
        throw ConfigError("potential: renormalize requires exp_base");
    if (is_terminal_or_truncating) return 0.0;

    double phi = base_value(spec, s);
    if (spec.exp_base) {
        phi = std::pow(*spec.exp_base, phi);
        if (spec.renormalize) phi = (phi - 1.0) / (*spec.exp_base - 1.0);
    }
    if (spec.bias != 0.0) phi += spec.bias / (spec.gamma - 1.0);
    return phi;
}

double shaping_term(const PotentialSpec& spec, const State& s, const State& s_next,
                    bool next_is_terminal_or_truncating) {
    return spec.gamma * potential(spec, s_next, next_is_terminal_or_truncating) -
           potential(spec, s, false);
}

ShapedReward shaped_reward(const PotentialSpec& spec, const Transition& t) {
    ShapedReward out;
    out.original_r = t.r;
    out.f = shaping_term(spec, t.s, t.s_next, t.ends_episode());
    out.shaped_r = t.r + out.f;
    return out;
}

double recommended_bias(double gamma, double q_init, double r_inf) {
    return (1.0 - gamma) * q_init - r_inf;
}

PotentialSpec vstar_potential(std::vector<double> oracle_values, double gamma) {
    PotentialSpec spec;
    spec.base = PotentialBase::OracleVStar;
    spec.oracle_values = std::move(oracle_values);
    spec.normalize = false;
    spec.gamma = gamma;
    return spec;
}

}  // namespace pbrs
