#include "pbrs/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pbrs {

double td_loss(const MLPQNet& net, const MLPQNet& target_net, const ReplayBuffer& buf,
               std::span<const std::size_t> batch_idx, double gamma,
               std::span<double> grad_out, double huber_delta) {
    if (batch_idx.empty()) throw ContractViolation("td_loss: empty batch");
    const double inv_b = 1.0 / static_cast<double>(batch_idx.size());
    double loss = 0.0;
    MLPQNet::Workspace ws;
    for (const std::size_t i : batch_idx) {
        const StoredTransition& t = buf[i];
        double y = t.r;
        if (t.kind != TerminationKind::Terminal)
            y += gamma * target_net.max_q(t.s_next);
        net.forward(t.s, ws);
        const double diff = ws.q[t.a] - y;
        double dloss;
        if (huber_delta > 0.0 && std::abs(diff) > huber_delta) {
            loss += huber_delta * (std::abs(diff) - 0.5 * huber_delta) * inv_b;
            dloss = diff > 0.0 ? huber_delta : -huber_delta;
        } else if (huber_delta > 0.0) {
            loss += 0.5 * diff * diff * inv_b;
            dloss = diff;
        } else {
            loss += diff * diff * inv_b;
            dloss = 2.0 * diff;
        }
        ws.dq.assign(ws.q.size(), 0.0);
        ws.dq[t.a] = dloss * inv_b;
        net.backward_accumulate(t.s, ws, grad_out);
    }
    return loss;
}

namespace {

EvalPoint evaluate_greedy(const Environment& env, const MLPQNet& net, int n_eval,
                          long step, RngStream& rng_eval) {
    EvalPoint point;
    point.step = step;
    auto eval_env = env.clone();
    const Policy policy = [&](const State& s, RngStream&) {
        return net.greedy_action(s.features);
    };
    double total_len = 0.0, total_ret = 0.0;
    for (int e = 0; e < n_eval; ++e) {
        const auto episode = run_episode(*eval_env, policy, eval_env->max_steps(), rng_eval);
        total_len += static_cast<double>(episode.size());
        for (const Transition& t : episode) total_ret += t.r;
    }
    point.mean_len = total_len / n_eval;
    point.mean_return = total_ret / n_eval;
    return point;
}

}  // namespace

DQNResult train_dqn(Environment& env, const std::optional<PotentialSpec>& spec,
                    const DQNConfig& cfg, long total_steps, RngStream rng,
                    const DQNStepHook& hook) {
    if (env.observation_dim() <= 0)
        throw ContractViolation("train_dqn: environment is not continuous");

    RngStream rng_init = rng.substream("net-init");
    RngStream rng_explore = rng.substream("explore");
    RngStream rng_replay = rng.substream("replay");
    RngStream rng_eval = rng.substream("eval");
    RngStream rng_env = rng.substream("env");
    RngStream rng_probe = rng.substream("probe");

    MLPQNet net = MLPQNet::random_init(env.observation_dim(), cfg.hidden,
                                       env.action_count(), rng_init);
    MLPQNet target = net;
    AdamState adam(net.params().size());
    const AdamConfig adam_cfg{cfg.lr, 0.9, 0.999, 1e-8};
    ReplayBuffer buffer(cfg.buffer);

    DQNResult result{{}, net, 0.0, 0.0};
    std::tie(result.initial_q_min, result.initial_q_max) =
        probe_q_range(net, env, 256, rng_probe);

    std::vector<double> grad(net.params().size(), 0.0);
    std::vector<std::size_t> batch_idx;

    if (cfg.eval_interval > 0)
        result.curve.push_back(evaluate_greedy(env, net, cfg.n_eval, 0, rng_eval));

    State s = env.reset(rng_env);
    for (long step = 1; step <= total_steps; ++step) {
        const double frac = std::min(1.0, static_cast<double>(step) /
                                              static_cast<double>(cfg.eps_decay_steps));
        const double eps = cfg.eps_start + frac * (cfg.eps_end - cfg.eps_start);

        int a;
        if (rng_explore.next_double() < eps)
            a = static_cast<int>(rng_explore.next_below(env.action_count()));
        else
            a = net.greedy_action(s.features);

        const Transition t = env.step(a);
        StoredTransition st;
        st.s = t.s.features;
        st.s_next = t.s_next.features;
        st.a = t.a;
        if (spec) {
            const bool zero_next =
                t.kind == TerminationKind::Terminal ||
                (t.kind == TerminationKind::Truncated && cfg.truncation_zero_potential);
            st.r = t.r + shaping_term(*spec, t.s, t.s_next, zero_next);
        } else {
            st.r = t.r;
        }
        st.kind = t.kind;
        buffer.push(std::move(st));

        s = t.ends_episode() ? env.reset(rng_env) : t.s_next;

        if (step >= cfg.learning_starts && step % cfg.train_freq == 0 &&
            buffer.size() >= static_cast<std::size_t>(cfg.batch)) {
            for (int g = 0; g < cfg.grad_steps; ++g) {
                buffer.sample_indices(cfg.batch, rng_replay, batch_idx);
                std::fill(grad.begin(), grad.end(), 0.0);
                const double loss = td_loss(net, target, buffer, batch_idx, cfg.gamma,
                                            grad, cfg.huber_delta);
                if (!std::isfinite(loss))
                    throw NumericFault("train_dqn: non-finite loss at step " +
                                       std::to_string(step));
                if (cfg.max_grad_norm > 0.0) {
                    double norm = 0.0;
                    for (double gv : grad) norm += gv * gv;
                    norm = std::sqrt(norm);
                    if (norm > cfg.max_grad_norm) {
                        const double scale = cfg.max_grad_norm / norm;
                        for (double& gv : grad) gv *= scale;
                    }
                }
                adam.step(net.params(), grad, adam_cfg);
            }
        }
        if (step % cfg.target_update_interval == 0) target = net;
        if (hook) hook(step, net, target, buffer);
        if (cfg.eval_interval > 0 && step % cfg.eval_interval == 0)
            result.curve.push_back(evaluate_greedy(env, net, cfg.n_eval, step, rng_eval));
    }
    result.net = net;
    return result;
}

std::pair<double, double> probe_q_range(const MLPQNet& net, Environment& env,
                                        int n_samples, RngStream& rng) {
    auto probe_env = env.clone();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    State s = probe_env->reset(rng);
    for (int i = 0; i < n_samples; ++i) {
        for (double q : net.predict(s.features)) {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        const int a = static_cast<int>(rng.next_below(probe_env->action_count()));
        const Transition t = probe_env->step(a);
        s = t.ends_episode() ? probe_env->reset(rng) : t.s_next;
    }
    return {lo, hi};
}

}  // namespace pbrs
