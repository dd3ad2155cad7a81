#include "pbrs/tabular_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace pbrs {

void TabularMDP::validate() const {
    if (n_states < 1 || n_actions < 1)
        throw ConfigError("TabularMDP: empty state or action space");
    if (next.size() != static_cast<std::size_t>(n_states) * n_actions ||
        reward.size() != next.size() ||
        terminal_state.size() != static_cast<std::size_t>(n_states))
        throw ConfigError("TabularMDP: table sizes do not match |S| x |A|");
    for (int s = 0; s < n_states; ++s) {
        if (terminal_state[s]) continue;
        for (int a = 0; a < n_actions; ++a) {
            const int sn = next[idx(s, a)];
            if (sn < 0 || sn >= n_states)
                throw ConfigError("TabularMDP: successor out of range");
            if (!std::isfinite(reward[idx(s, a)]))
                throw ConfigError("TabularMDP: non-finite reward");
        }
    }
}

std::vector<Transition> TabularMDP::all_transitions() const {
    std::vector<Transition> out;
    for (int s = 0; s < n_states; ++s) {
        if (terminal_state[s]) continue;
        for (int a = 0; a < n_actions; ++a) {
            Transition t;
            t.s = State::tabular(s);
            t.a = a;
            t.s_next = State::tabular(next[idx(s, a)]);
            t.r = reward[idx(s, a)];
            t.kind = terminal_state[t.s_next.index] ? TerminationKind::Terminal
                                                    : TerminationKind::NonTerminal;
            out.push_back(std::move(t));
        }
    }
    return out;
}

ValueSolution value_iteration(const TabularMDP& mdp, double tol, long max_iters,
                              double tie_tol) {
    if (tol <= 0.0) throw std::invalid_argument("value_iteration: tol must be > 0");
    mdp.validate();

    ValueSolution sol;
    sol.v_star.assign(mdp.n_states, 0.0);
    sol.q_star.assign(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions, 0.0);
    std::vector<double> v_new(mdp.n_states, 0.0);

    double residual = 0.0;
    for (long it = 0; it < max_iters; ++it) {
        residual = 0.0;
        for (int s = 0; s < mdp.n_states; ++s) {
            if (mdp.terminal_state[s]) {
                v_new[s] = 0.0;
                continue;
            }
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < mdp.n_actions; ++a) {
                const int sn = mdp.next[mdp.idx(s, a)];
                const double q = mdp.reward[mdp.idx(s, a)] +
                                 (mdp.terminal_state[sn] ? 0.0 : mdp.gamma * sol.v_star[sn]);
                best = std::max(best, q);
            }
            v_new[s] = best;
            residual = std::max(residual, std::abs(v_new[s] - sol.v_star[s]));
        }
        sol.v_star.swap(v_new);
        sol.iterations = it + 1;
        if (residual < tol) break;
    }
    sol.residual = residual;
    if (residual >= tol)
        throw ValueIterationError("value_iteration: no convergence within max_iters", residual);

    sol.policy.assign(mdp.n_states, {});
    for (int s = 0; s < mdp.n_states; ++s) {
        if (mdp.terminal_state[s]) continue;
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < mdp.n_actions; ++a) {
            const int sn = mdp.next[mdp.idx(s, a)];
            const double q = mdp.reward[mdp.idx(s, a)] +
                             (mdp.terminal_state[sn] ? 0.0 : mdp.gamma * sol.v_star[sn]);
            sol.q_star[mdp.idx(s, a)] = q;
            best = std::max(best, q);
        }
        for (int a = 0; a < mdp.n_actions; ++a)
            if (sol.q_star[mdp.idx(s, a)] >= best - tie_tol) sol.policy[s].push_back(a);
    }
    return sol;
}

TabularMDP shaped_mdp(const TabularMDP& mdp, const PotentialSpec& spec) {
    if (spec.gamma != mdp.gamma)
        throw ConfigError("shaped_mdp: potential gamma differs from MDP gamma");
    TabularMDP out = mdp;
    for (int s = 0; s < mdp.n_states; ++s) {
        if (mdp.terminal_state[s]) continue;
        const double phi_s = potential(spec, State::tabular(s), false);
        for (int a = 0; a < mdp.n_actions; ++a) {
            const int sn = mdp.next[mdp.idx(s, a)];
            const double phi_next =
                potential(spec, State::tabular(sn), mdp.terminal_state[sn] != 0);
            out.reward[mdp.idx(s, a)] += mdp.gamma * phi_next - phi_s;
        }
    }
    return out;
}

TabularMDP gridworld_mdp(const GridworldConfig& cfg, double gamma) {
    cfg.validate();
    TabularMDP mdp;
    mdp.n_states = cfg.state_count();
    mdp.n_actions = kGridActionCount;
    mdp.gamma = gamma;
    mdp.next.assign(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions, 0);
    mdp.reward.assign(mdp.next.size(), 0.0);
    mdp.terminal_state.assign(mdp.n_states, 0);
    mdp.terminal_state[cfg.goal_index()] = 1;
    for (int s = 0; s < mdp.n_states; ++s) {
        if (mdp.terminal_state[s]) {
            for (int a = 0; a < mdp.n_actions; ++a) mdp.next[mdp.idx(s, a)] = s;
            continue;
        }
        for (int a = 0; a < mdp.n_actions; ++a) {
            const Transition t = gridworld_step(cfg, s, a);
            mdp.next[mdp.idx(s, a)] = t.s_next.index;
            mdp.reward[mdp.idx(s, a)] = t.r;
        }
    }
    return mdp;
}

void write_value_csv(std::ostream& out, const ValueSolution& sol,
                     const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "state,v_star,policy\n";
    for (std::size_t s = 0; s < sol.v_star.size(); ++s) {
        out << s << ',' << format_double(sol.v_star[s]) << ',';
        for (std::size_t i = 0; i < sol.policy[s].size(); ++i) {
            if (i) out << ';';
            out << sol.policy[s][i];
        }
        out << '\n';
    }
}

}  // namespace pbrs
