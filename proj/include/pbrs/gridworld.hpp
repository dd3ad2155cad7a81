#pragma once

#include "pbrs/env.hpp"

namespace pbrs {

enum class RewardMode { GoalDirected, OnStep };

const char* to_string(RewardMode m);
RewardMode reward_mode_from_string(const std::string& s);

// Square (or rectangular) grid. The agent starts top-left and must enter the
// goal cell bottom-right; entering it terminates the episode. GoalDirected
// pays 1 on the goal-entering transition and 0 elsewhere; OnStep pays -1 on
// every transition. Off-grid moves leave the agent in place.
struct GridworldConfig {
    int width = 25;
    int height = 25;
    int start_x = 0, start_y = 0;
    int goal_x = -1, goal_y = -1;  // -1 resolves to the bottom-right corner
    RewardMode reward_mode = RewardMode::GoalDirected;
    int max_steps = 250;

    int resolved_goal_x() const { return goal_x < 0 ? width - 1 : goal_x; }
    int resolved_goal_y() const { return goal_y < 0 ? height - 1 : goal_y; }
    int state_count() const { return width * height; }
    int index_of(int x, int y) const { return y * width + x; }
    int goal_index() const { return index_of(resolved_goal_x(), resolved_goal_y()); }
    void validate() const;
};

// Actions: 0 = up (y-1), 1 = down (y+1), 2 = left (x-1), 3 = right (x+1).
inline constexpr int kGridActionCount = 4;

// Pure single-step dynamics; never reports Truncated (the episode cap is the
// environment's job). s must be on-grid and non-terminal.
Transition gridworld_step(const GridworldConfig& cfg, int state_index, int action);

class GridworldEnv final : public Environment {
public:
    explicit GridworldEnv(GridworldConfig cfg);

    State reset(RngStream& rng) override;
    Transition step(int action) override;
    int action_count() const override { return kGridActionCount; }
    int state_count() const override { return cfg_.state_count(); }
    int max_steps() const override { return cfg_.max_steps; }
    const State& current() const override { return state_; }
    std::unique_ptr<Environment> clone() const override;
    bool is_terminal_state(int index) const override { return index == cfg_.goal_index(); }

    const GridworldConfig& config() const { return cfg_; }

private:
    GridworldConfig cfg_;
    State state_;
    int steps_ = 0;
};

}  // namespace pbrs
