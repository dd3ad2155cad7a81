#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pbrs/audit.hpp"
#include "pbrs/qlearning.hpp"
#include "pbrs/rng.hpp"
#include "pbrs/tabular_mdp.hpp"

using namespace pbrs;

namespace {

PotentialSpec exp_manhattan(const GridworldConfig& grid, double gamma, double bias,
                            double base = 32.0) {
    PotentialSpec spec;
    spec.base = PotentialBase::ManhattanToGoal;
    spec.grid_width = grid.width;
    spec.grid_height = grid.height;
    spec.goal_x = grid.resolved_goal_x();
    spec.goal_y = grid.resolved_goal_y();
    spec.normalize = true;
    spec.exp_base = base;
    spec.gamma = gamma;
    spec.bias = bias;
    return spec;
}

Transition step_toward_goal_from_start(const GridworldConfig& grid) {
    return gridworld_step(grid, grid.index_of(0, 0), 3);
}

}  // namespace

TEST_CASE("toward-goal steps are incentivized at zero init and matched bias") {
    GridworldConfig grid;  // 25x25, d_max = 48
    AuditInput in;
    in.spec = exp_manhattan(grid, 0.95, 0.0);
    in.q_init = 0.0;
    // gamma * 32^(1/48) = 1.0211... > 1, so F > 0 at every toward-goal step
    const TransitionVerdict v = classify_transition(in, step_toward_goal_from_start(grid));
    CHECK(v.verdict == Verdict::IncentivizedCorrectly);
    CHECK(v.shaped_r > 0.0);
    CHECK(v.threshold == 0.0);
}

TEST_CASE("optimistic init without a bias violates Req1 near the start") {
    GridworldConfig grid;
    AuditInput in;
    in.spec = exp_manhattan(grid, 0.95, 0.0);
    in.q_init = 1.0;  // threshold 0.05 exceeds the small early shaping reward
    const TransitionVerdict v = classify_transition(in, step_toward_goal_from_start(grid));
    CHECK(v.verdict == Verdict::ViolatesReq1);
    CHECK(v.shaped_r == doctest::Approx(0.95 * std::pow(32.0, 1.0 / 48.0) - 1.0).epsilon(1e-9));
    CHECK(v.shaped_r < v.threshold);
}

TEST_CASE("away and level moves are disincentivized; level ties flag boundary") {
    GridworldConfig grid;
    AuditInput in;
    in.spec = exp_manhattan(grid, 0.95, 0.0);
    in.q_init = 0.0;

    // away from goal
    Transition away = gridworld_step(grid, grid.index_of(1, 1), 0);
    CHECK(classify_transition(in, away).verdict == Verdict::DisincentivizedCorrectly);

    // wall bump: equal potentials, strictly negative F, still fine
    Transition bump = gridworld_step(grid, grid.index_of(0, 0), 0);
    CHECK(classify_transition(in, bump).verdict == Verdict::DisincentivizedCorrectly);

    // constructed exact tie: zero potential everywhere, zero reward
    PotentialSpec zero;
    zero.base = PotentialBase::Constant;
    zero.constant_value = 0.0;
    zero.gamma = 0.95;
    AuditInput tie{zero, 0.0, 0.0, 1.0, true};
    Transition level;
    level.s = State::tabular(0);
    level.s_next = State::tabular(1);
    level.r = 0.0;
    const TransitionVerdict tv = classify_transition(tie, level);
    CHECK(tv.verdict == Verdict::DisincentivizedCorrectly);
    CHECK(tv.boundary);
}

TEST_CASE("matched on-step bias creates a truncation violation") {
    GridworldConfig grid;
    grid.reward_mode = RewardMode::OnStep;
    AuditInput in;
    in.spec = exp_manhattan(grid, 0.95, 1.0);  // matched for q_init 0, r_inf -1
    in.q_init = 0.0;
    in.r_g = -1.0;
    in.r_inf = -1.0;

    // large negative shifted potential => large positive shaped reward on
    // truncation
    Transition trunc = gridworld_step(grid, grid.index_of(0, 0), 3);
    trunc.kind = TerminationKind::Truncated;
    const TransitionVerdict v = classify_transition(in, trunc);
    CHECK(v.verdict == Verdict::ViolatesTerminalReq);
    CHECK(v.shaped_r > 0.0);
}

TEST_CASE("terminal failure transitions audit as endings when flagged") {
    PotentialSpec spec;
    spec.base = PotentialBase::Constant;
    spec.constant_value = 0.4;
    spec.gamma = 0.99;
    AuditInput in{spec, 0.0, 1.0, 1.0, /*terminal_is_goal=*/false};
    Transition t;
    t.s = State::tabular(0);
    t.s_next = State::tabular(1);
    t.r = 1.0;
    t.kind = TerminationKind::Terminal;
    // shaped 1 - 0.4 = 0.6 > 0: wrongly incentivizes dying
    CHECK(classify_transition(in, t).verdict == Verdict::ViolatesTerminalReq);
}

TEST_CASE("potential_bounds reproduces the goal-directed interval") {
    PotentialBounds b = potential_bounds(0.95, 0.0, 1.0, 0.0);
    REQUIRE(b.feasible);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 1.0);

    b = potential_bounds(0.95, -1.0, 1.0, 0.0);
    CHECK(b.lower == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.05).epsilon(1e-12));

    CHECK_FALSE(potential_bounds(0.95, 0.0, -1.0, -1.0).feasible);
}

TEST_CASE("min_delta_linear thresholds") {
    CHECK(min_delta_linear(0.0, 0.75) == 0.0);
    CHECK(min_delta_linear(1.0, 0.75) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(min_delta_linear(0.5, 0.95) ==
          doctest::Approx(0.0263157894736842).epsilon(1e-12));
    // the negative branch mirrors the positive one
    CHECK(min_delta_linear(-1.0, 0.75, true) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(min_delta_linear(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(min_delta_linear(-1.0, 0.75), std::invalid_argument);
}

TEST_CASE("min_delta_exponential thresholds") {
    // frozen from ln(1/gamma)/ln(base)
    CHECK(min_delta_exponential(8.0, 0.75) ==
          doctest::Approx(0.1383458330929479).epsilon(1e-12));
    CHECK(min_delta_exponential(64.0, 0.75) ==
          doctest::Approx(0.06917291654647395).epsilon(1e-12));
    // squaring the base halves the threshold
    RngStream rng(13);
    for (int i = 0; i < 50; ++i) {
        const double gamma = rng.uniform(0.3, 0.99);
        const double base = rng.uniform(1.5, 64.0);
        CHECK(min_delta_exponential(base * base, gamma) ==
              doctest::Approx(min_delta_exponential(base, gamma) / 2.0).epsilon(1e-12));
    }
    CHECK(min_delta_exponential(8.0, 0.999999) < 1e-6);
}

TEST_CASE("shaping surface rows") {
    const std::vector<double> phis = {0.0, 0.5, 1.0};
    const std::vector<double> deltas = {-0.5, 0.0, 0.2, 0.5};

    const auto linear = shaping_surface(std::nullopt, 0.75, phis, deltas);
    for (const SurfaceRow& r : linear) {
        if (r.delta == 0.0) CHECK(r.f == doctest::Approx(-0.25 * r.phi).epsilon(1e-12));
        if (r.phi == 0.0 && r.delta == 0.5)
            CHECK(r.f == doctest::Approx(0.375).epsilon(1e-12));
    }

    const auto exp8 = shaping_surface(8.0, 0.75, phis, deltas);
    for (const SurfaceRow& r : exp8)
        if (r.phi == 0.0 && r.delta == 0.2)
            CHECK(r.f == doctest::Approx(0.1367874248827987).epsilon(1e-12));

    std::stringstream ss;
    write_surface_csv(ss, exp8, "fixture");
    const auto back = read_surface_csv(ss);
    REQUIRE(back.size() == exp8.size());
    CHECK(back[0].exponential);
    CHECK(back[5].f == doctest::Approx(exp8[5].f).epsilon(1e-8));
}

TEST_CASE("matched-bias exponential verdicts depend only on delta") {
    // with b = (1-gamma)q_init - r_inf the threshold for a potential step of
    // delta is independent of phi(s)
    const double gamma = 0.8;
    const double q_init = -0.5;
    const double r_inf = -1.0;
    const double b = recommended_bias(gamma, q_init, r_inf);
    const double base = 16.0;
    const double dstar = min_delta_exponential(base, gamma);

    GridworldConfig grid;
    grid.width = 41;
    grid.height = 1;
    grid.max_steps = 100;
    grid.reward_mode = RewardMode::OnStep;  // every transition pays r_inf
    // distance decreases by 1 per right move; normalized step = 1/40
    PotentialSpec spec;
    spec.base = PotentialBase::ManhattanToGoal;
    spec.grid_width = grid.width;
    spec.grid_height = grid.height;
    spec.goal_x = grid.resolved_goal_x();
    spec.goal_y = grid.resolved_goal_y();
    spec.normalize = true;
    spec.exp_base = base;
    spec.gamma = gamma;
    spec.bias = b;

    AuditInput in{spec, q_init, r_inf, r_inf, true};
    const double delta = 1.0 / 40.0;
    REQUIRE(delta < dstar);  // below the threshold: every toward move violates
    for (int x = 0; x < 38; ++x) {
        Transition t = gridworld_step(grid, grid.index_of(x, 0), 3);
        REQUIRE(classify_transition(in, t).verdict == Verdict::ViolatesReq1);
    }

    // a 2-cell-per-move variant pushes delta above the threshold
    GridworldConfig wide = grid;
    wide.width = 11;
    PotentialSpec spec2 = spec;
    spec2.grid_width = wide.width;
    spec2.goal_x = wide.resolved_goal_x();
    AuditInput in2{spec2, q_init, r_inf, r_inf, true};
    REQUIRE(1.0 / 10.0 > dstar);
    for (int x = 0; x < 9; ++x) {
        Transition t = gridworld_step(wide, wide.index_of(x, 0), 3);
        REQUIRE(classify_transition(in2, t).verdict == Verdict::IncentivizedCorrectly);
    }
}

TEST_CASE("potentials inside the bounds keep all ending transitions legal") {
    RngStream rng(17);
    GridworldConfig grid;
    grid.width = 8;
    grid.height = 8;
    const double gamma = 0.9;
    const TabularMDP mdp = gridworld_mdp(grid, gamma);
    const PotentialBounds bounds = potential_bounds(gamma, 0.0, 1.0, 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phi(mdp.n_states, 0.0);
        for (int s = 0; s < mdp.n_states; ++s)
            if (!mdp.terminal_state[s])
                phi[s] = rng.uniform(bounds.lower + 1e-6, bounds.upper - 1e-6);
        AuditInput in{vstar_potential(phi, gamma), 0.0, 0.0, 1.0, true};

        auto transitions = mdp.all_transitions();
        // synthetic truncations from every state as well
        const auto n = transitions.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (transitions[i].kind != TerminationKind::NonTerminal) continue;
            Transition t = transitions[i];
            t.kind = TerminationKind::Truncated;
            transitions.push_back(t);
        }
        const AuditReport report = audit_transitions(in, transitions);
        CHECK(report.counts[static_cast<int>(Verdict::ViolatesGoalReq)] == 0);
        CHECK(report.counts[static_cast<int>(Verdict::ViolatesTerminalReq)] == 0);
        CHECK(report.outside_bounds == 0);
    }
}

TEST_CASE("every audited transition receives exactly one verdict") {
    GridworldConfig grid;
    grid.width = 9;
    grid.height = 9;
    AuditInput in;
    in.spec = exp_manhattan(grid, 0.95, 0.05);
    in.q_init = 1.0;
    const auto transitions = gridworld_mdp(grid, 0.95).all_transitions();
    const AuditReport report = audit_transitions(in, transitions);
    long total = 0;
    for (long c : report.counts) total += c;
    CHECK(total == static_cast<long>(transitions.size()));
    CHECK(report.verdicts.size() == transitions.size());
    CHECK(report.summary().find("first-update analysis") != std::string::npos);
}

TEST_CASE("first-update directions agree with q_update on fresh tables") {
    GridworldConfig grid;
    grid.width = 9;
    grid.height = 9;
    const double gamma = 0.95;
    AuditInput in;
    in.spec = exp_manhattan(grid, gamma, 0.0);
    in.q_init = 0.0;

    QLearnConfig cfg;
    cfg.gamma = gamma;
    cfg.q_init = 0.0;
    for (const Transition& t : gridworld_mdp(grid, gamma).all_transitions()) {
        QTable q(grid.state_count(), 4, cfg.q_init);
        const double updated = q_update(q, t, shaped_reward(in.spec, t).shaped_r, cfg);
        const int move = updated > cfg.q_init ? 1 : (updated < cfg.q_init ? -1 : 0);
        REQUIRE(move == classify_transition(in, t).direction());
    }
}

TEST_CASE("negative potentials mis-reward small decreases, mirroring the positive branch") {
    // at phi = -1, gamma = 0.75 a decrease smaller than 1/3 still gets a
    // positive shaping reward
    const double gamma = 0.75;
    const double threshold = min_delta_linear(-1.0, gamma, true);
    REQUIRE(threshold == doctest::Approx(1.0 / 3.0));
    const std::vector<double> phis = {-1.0};
    std::vector<double> deltas;
    for (int i = -20; i <= 0; ++i) deltas.push_back(i / 20.0);
    for (const SurfaceRow& r : shaping_surface(std::nullopt, gamma, phis, deltas)) {
        if (-r.delta < threshold && r.delta < 0.0) CHECK(r.f > 0.0);
        if (-r.delta > threshold) CHECK(r.f < 0.0);
    }
}
