#include "pbrs/audit.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace pbrs {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::IncentivizedCorrectly: return "incentivized_correctly";
        case Verdict::DisincentivizedCorrectly: return "disincentivized_correctly";
        case Verdict::ViolatesReq1: return "violates_req1";
        case Verdict::ViolatesReq2: return "violates_req2";
        case Verdict::ViolatesReq3: return "violates_req3";
        case Verdict::ViolatesGoalReq: return "violates_goal_req";
        case Verdict::ViolatesTerminalReq: return "violates_terminal_req";
    }
    return "unknown";
}

int TransitionVerdict::direction() const {
    if (shaped_r > threshold) return 1;
    if (shaped_r < threshold) return -1;
    return 0;
}

TransitionVerdict classify_transition(const AuditInput& in, const Transition& t) {
    TransitionVerdict out;
    out.threshold = (1.0 - in.spec.gamma) * in.q_init;
    out.shaped_r = shaped_reward(in.spec, t).shaped_r;
    out.phi_s = potential(in.spec, t.s, false);
    out.boundary = out.shaped_r == out.threshold;

    if (t.ends_episode()) {
        out.phi_next = std::numeric_limits<double>::quiet_NaN();
        const bool goal_entry = t.kind == TerminationKind::Terminal && in.terminal_is_goal;
        if (goal_entry)
            out.verdict = out.shaped_r > out.threshold ? Verdict::IncentivizedCorrectly
                                                       : Verdict::ViolatesGoalReq;
        else
            out.verdict = out.shaped_r < out.threshold ? Verdict::DisincentivizedCorrectly
                                                       : Verdict::ViolatesTerminalReq;
        return out;
    }

    out.phi_next = potential(in.spec, t.s_next, false);
    if (out.phi_next > out.phi_s)
        out.verdict = out.shaped_r > out.threshold ? Verdict::IncentivizedCorrectly
                                                   : Verdict::ViolatesReq1;
    else if (out.phi_next < out.phi_s)
        out.verdict = out.shaped_r < out.threshold ? Verdict::DisincentivizedCorrectly
                                                   : Verdict::ViolatesReq2;
    else
        out.verdict = out.shaped_r <= out.threshold ? Verdict::DisincentivizedCorrectly
                                                    : Verdict::ViolatesReq3;
    return out;
}

AuditReport audit_transitions(const AuditInput& in, const std::vector<Transition>& ts) {
    if (ts.empty()) throw std::invalid_argument("audit_transitions: no transitions");
    AuditReport report;
    report.bounds = potential_bounds(in.spec.gamma, in.q_init, in.r_g, in.r_inf);
    report.phi_min = std::numeric_limits<double>::infinity();
    report.phi_max = -std::numeric_limits<double>::infinity();
    report.verdicts.reserve(ts.size());

    auto observe_phi = [&](double phi) {
        report.phi_min = std::min(report.phi_min, phi);
        report.phi_max = std::max(report.phi_max, phi);
        if (report.bounds.feasible && (phi <= report.bounds.lower || phi >= report.bounds.upper))
            ++report.outside_bounds;
    };

    for (const Transition& t : ts) {
        TransitionVerdict v = classify_transition(in, t);
        observe_phi(v.phi_s);
        if (!t.ends_episode()) observe_phi(v.phi_next);
        ++report.counts[static_cast<int>(v.verdict)];
        if (v.boundary) ++report.boundary_count;
        report.verdicts.push_back(v);
    }
    return report;
}

std::string AuditReport::summary() const {
    std::ostringstream os;
    long total = 0;
    for (long c : counts) total += c;
    os << "first-update analysis of " << total << " transitions\n";
    for (int i = 0; i < kVerdictCount; ++i)
        os << "  " << to_string(static_cast<Verdict>(i)) << ": " << counts[i] << '\n';
    os << "  boundary ties: " << boundary_count << '\n';
    if (bounds.feasible) {
        os << "  potential bounds (" << format_double(bounds.lower) << ", "
           << format_double(bounds.upper) << "): " << outside_bounds
           << " observed potentials outside\n";
    } else {
        os << "  potential bounds infeasible (r_g <= r_inf)\n";
    }
    os << "  observed potential range [" << format_double(phi_min) << ", "
       << format_double(phi_max) << "]\n";
    return os.str();
}

void write_verdict_csv(std::ostream& out, const std::vector<Transition>& ts,
                       const AuditReport& report) {
    out << "idx,s,a,s_next,r,kind,shaped_r,threshold,phi_s,phi_next,verdict,boundary\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Transition& t = ts[i];
        const TransitionVerdict& v = report.verdicts[i];
        out << i << ',' << state_to_field(t.s) << ',' << t.a << ','
            << state_to_field(t.s_next) << ',' << format_double(t.r) << ','
            << to_string(t.kind) << ',' << format_double(v.shaped_r) << ','
            << format_double(v.threshold) << ',' << format_double(v.phi_s) << ','
            << format_double(v.phi_next) << ',' << to_string(v.verdict) << ','
            << (v.boundary ? 1 : 0) << '\n';
    }
}

PotentialBounds potential_bounds(double gamma, double q_init, double r_g, double r_inf) {
    PotentialBounds b;
    b.lower = r_inf - (1.0 - gamma) * q_init;
    b.upper = r_g - (1.0 - gamma) * q_init;
    b.feasible = r_g > r_inf;
    return b;
}

double min_delta_linear(double phi_s, double gamma, bool negative_branch) {
    if (gamma <= 0.0) throw ConfigError("min_delta_linear: gamma must be > 0");
    if (!negative_branch && phi_s < 0.0)
        throw std::invalid_argument("min_delta_linear: phi_s must be >= 0 on the positive branch");
    return (1.0 - gamma) / gamma * std::abs(phi_s);
}

double min_delta_exponential(double exp_base, double gamma) {
    if (exp_base <= 1.0) throw ConfigError("min_delta_exponential: exp_base must be > 1");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw ConfigError("min_delta_exponential: gamma must be in (0, 1)");
    return std::log(1.0 / gamma) / std::log(exp_base);
}

std::vector<SurfaceRow> shaping_surface(std::optional<double> exp_base, double gamma,
                                        std::span<const double> phi_grid,
                                        std::span<const double> delta_grid) {
    if (exp_base && *exp_base <= 1.0)
        throw ConfigError("shaping_surface: exp_base must be > 1");
    std::vector<SurfaceRow> rows;
    rows.reserve(phi_grid.size() * delta_grid.size());
    for (double phi : phi_grid) {
        for (double delta : delta_grid) {
            SurfaceRow row;
            row.exponential = exp_base.has_value();
            row.exp_base = exp_base.value_or(0.0);
            row.gamma = gamma;
            row.phi = phi;
            row.delta = delta;
            if (exp_base)
                row.f = gamma * std::pow(*exp_base, phi + delta) - std::pow(*exp_base, phi);
            else
                row.f = gamma * (phi + delta) - phi;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows,
                       const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "potential_kind,exp_base,gamma,phi,delta,f\n";
    for (const SurfaceRow& r : rows) {
        out << (r.exponential ? "exponential" : "linear") << ','
            << format_double(r.exp_base) << ',' << format_double(r.gamma) << ','
            << format_double(r.phi) << ',' << format_double(r.delta) << ','
            << format_double(r.f) << '\n';
    }
}

std::vector<SurfaceRow> read_surface_csv(std::istream& in) {
    std::vector<SurfaceRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string kind, base, gamma, phi, delta, f;
        std::getline(ss, kind, ',');
        std::getline(ss, base, ',');
        std::getline(ss, gamma, ',');
        std::getline(ss, phi, ',');
        std::getline(ss, delta, ',');
        std::getline(ss, f, ',');
        SurfaceRow row;
        row.exponential = kind == "exponential";
        row.exp_base = std::stod(base);
        row.gamma = std::stod(gamma);
        row.phi = std::stod(phi);
        row.delta = std::stod(delta);
        row.f = std::stod(f);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pbrs
