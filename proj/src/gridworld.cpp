#include "pbrs/gridworld.hpp"

#include <stdexcept>

namespace pbrs {

const char* to_string(RewardMode m) {
    return m == RewardMode::GoalDirected ? "goal_directed" : "on_step";
}

RewardMode reward_mode_from_string(const std::string& s) {
    if (s == "goal_directed") return RewardMode::GoalDirected;
    if (s == "on_step") return RewardMode::OnStep;
    throw ConfigError("unknown reward mode: " + s);
}

void GridworldConfig::validate() const {
    if (width < 1 || height < 1) throw ConfigError("gridworld: width/height must be >= 1");
    if (max_steps < 1) throw ConfigError("gridworld: max_steps must be >= 1");
    if (start_x < 0 || start_x >= width || start_y < 0 || start_y >= height)
        throw ConfigError("gridworld: start off-grid");
    if (index_of(start_x, start_y) == goal_index())
        throw ConfigError("gridworld: start must differ from goal");
}

Transition gridworld_step(const GridworldConfig& cfg, int state_index, int action) {
    const int w = cfg.width;
    const int x = state_index % w;
    const int y = state_index / w;
    if (state_index < 0 || state_index >= cfg.state_count())
        throw ContractViolation("gridworld_step: state off-grid");
    if (state_index == cfg.goal_index())
        throw ContractViolation("gridworld_step: stepping from the terminal goal state");

    int nx = x, ny = y;
    switch (action) {
        case 0: ny = y - 1; break;
        case 1: ny = y + 1; break;
        case 2: nx = x - 1; break;
        case 3: nx = x + 1; break;
        default: throw ContractViolation("gridworld_step: action out of range");
    }
    if (nx < 0 || nx >= w || ny < 0 || ny >= cfg.height) {
        nx = x;
        ny = y;
    }

    Transition t;
    t.s = State::tabular(state_index);
    t.a = action;
    t.s_next = State::tabular(cfg.index_of(nx, ny));
    const bool entered_goal = t.s_next.index == cfg.goal_index();
    t.kind = entered_goal ? TerminationKind::Terminal : TerminationKind::NonTerminal;
    if (cfg.reward_mode == RewardMode::GoalDirected)
        t.r = entered_goal ? 1.0 : 0.0;
    else
        t.r = -1.0;
    return t;
}

GridworldEnv::GridworldEnv(GridworldConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    state_ = State::tabular(cfg_.index_of(cfg_.start_x, cfg_.start_y));
}

State GridworldEnv::reset(RngStream& /*rng*/) {
    state_ = State::tabular(cfg_.index_of(cfg_.start_x, cfg_.start_y));
    steps_ = 0;
    return state_;
}

Transition GridworldEnv::step(int action) {
    Transition t = gridworld_step(cfg_, state_.index, action);
    ++steps_;
    if (t.kind == TerminationKind::NonTerminal && steps_ >= cfg_.max_steps)
        t.kind = TerminationKind::Truncated;
    state_ = t.s_next;
    return t;
}

std::unique_ptr<Environment> GridworldEnv::clone() const {
    return std::make_unique<GridworldEnv>(cfg_);
}

}  // namespace pbrs
