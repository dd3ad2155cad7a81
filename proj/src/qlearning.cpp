#include "pbrs/qlearning.hpp"

#include <cmath>
#include <ostream>

namespace pbrs {

double QTable::row_max(int s) const {
    double best = at(s, 0);
    for (int a = 1; a < n_actions; ++a) best = std::max(best, at(s, a));
    return best;
}

void QTable::argmax_set(int s, std::vector<int>& out) const {
    out.clear();
    const double best = row_max(s);
    for (int a = 0; a < n_actions; ++a)
        if (at(s, a) == best) out.push_back(a);
}

void write_qtable_csv(std::ostream& out, const QTable& q, const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "s,a,value\n";
    for (int s = 0; s < q.n_states; ++s)
        for (int a = 0; a < q.n_actions; ++a)
            out << s << ',' << a << ',' << format_double(q.at(s, a)) << '\n';
}

double q_update(QTable& q, const Transition& t, double shaped_r, const QLearnConfig& cfg) {
    if (t.s.index < 0 || t.s.index >= q.n_states || t.a < 0 || t.a >= q.n_actions)
        throw ContractViolation("q_update: indices out of range");
    double bootstrap;
    switch (t.kind) {
        case TerminationKind::Terminal:
            bootstrap = 0.0;
            break;
        case TerminationKind::Truncated:
            bootstrap = cfg.zero_bootstrap_on_truncation ? 0.0 : q.row_max(t.s_next.index);
            break;
        default:
            bootstrap = q.row_max(t.s_next.index);
    }
    double& entry = q.at(t.s.index, t.a);
    entry += cfg.alpha * (shaped_r + cfg.gamma * bootstrap - entry);
    return entry;
}

int epsilon_greedy(const QTable& q, int s, double epsilon, RngStream& rng) {
    thread_local std::vector<int> maxset;
    if (rng.next_double() < epsilon)
        return static_cast<int>(rng.next_below(static_cast<std::uint32_t>(q.n_actions)));
    q.argmax_set(s, maxset);
    return maxset[rng.next_below(static_cast<std::uint32_t>(maxset.size()))];
}

namespace {

EvalPoint evaluate(const Environment& env, const QTable& q, const QLearnConfig& cfg,
                   long step, RngStream& rng_eval) {
    EvalPoint point;
    point.step = step;
    auto eval_env = env.clone();
    const Policy policy = [&](const State& s, RngStream& rng) {
        return epsilon_greedy(q, s.index, cfg.eval_epsilon, rng);
    };
    double total_len = 0.0, total_ret = 0.0;
    for (int e = 0; e < cfg.n_eval; ++e) {
        const auto episode = run_episode(*eval_env, policy, eval_env->max_steps(), rng_eval);
        total_len += static_cast<double>(episode.size());
        for (const Transition& t : episode) total_ret += t.r;
    }
    point.mean_len = total_len / cfg.n_eval;
    point.mean_return = total_ret / cfg.n_eval;
    return point;
}

TabularResult train_loop(Environment& env, const std::optional<PotentialSpec>& spec,
                         const QLearnConfig& cfg, RngStream rng,
                         const StepObserver& observer, bool shift_init) {
    if (env.state_count() <= 0)
        throw ContractViolation("train_tabular: environment is not tabular");
    if (shift_init && !spec)
        throw ContractViolation("train_tabular_qinit_shifted: potential required");

    RngStream rng_train = rng.substream("train");
    RngStream rng_eval = rng.substream("eval");
    RngStream rng_env = rng.substream("env");

    TabularResult result{QTable(env.state_count(), env.action_count(), cfg.q_init), {}};
    if (shift_init) {
        for (int s = 0; s < env.state_count(); ++s) {
            const double phi = potential(*spec, State::tabular(s), env.is_terminal_state(s));
            for (int a = 0; a < env.action_count(); ++a) result.q.at(s, a) = cfg.q_init + phi;
        }
    }
    const bool shape = spec.has_value() && !shift_init;

    if (cfg.eval_interval > 0)
        result.curve.push_back(evaluate(env, result.q, cfg, 0, rng_eval));

    State s = env.reset(rng_env);
    for (long step = 1; step <= cfg.train_steps; ++step) {
        const int a = epsilon_greedy(result.q, s.index, cfg.epsilon, rng_train);
        const Transition t = env.step(a);
        const double r = shape ? shaped_reward(*spec, t).shaped_r : t.r;
        q_update(result.q, t, r, cfg);
        s = t.ends_episode() ? env.reset(rng_env) : t.s_next;
        if (observer) observer(step, t, r, result.q);
        if (cfg.eval_interval > 0 && step % cfg.eval_interval == 0)
            result.curve.push_back(evaluate(env, result.q, cfg, step, rng_eval));
    }
    return result;
}

}  // namespace

TabularResult train_tabular(Environment& env, const std::optional<PotentialSpec>& spec,
                            const QLearnConfig& cfg, RngStream rng,
                            const StepObserver& observer) {
    return train_loop(env, spec, cfg, rng, observer, /*shift_init=*/false);
}

TabularResult train_tabular_qinit_shifted(Environment& env, const PotentialSpec& spec,
                                          const QLearnConfig& cfg, RngStream rng,
                                          const StepObserver& observer) {
    return train_loop(env, spec, cfg, rng, observer, /*shift_init=*/true);
}

}  // namespace pbrs
