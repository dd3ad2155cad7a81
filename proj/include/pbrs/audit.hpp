#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbrs/potential.hpp"
#include "pbrs/types.hpp"

namespace pbrs {

// First-update analysis of a shaped reward against the threshold
// (1 - gamma) * q_init. The verdicts mirror the requirement inequalities:
// non-terminal transitions must push the shaped reward strictly above the
// threshold when the potential rises (Req1), strictly below when it falls
// (Req2), and not above it when it stays level (Req3, non-strict).
// Goal-entering transitions must land strictly above, all other episode
// endings strictly below.
enum class Verdict {
    IncentivizedCorrectly,
    DisincentivizedCorrectly,
    ViolatesReq1,
    ViolatesReq2,
    ViolatesReq3,
    ViolatesGoalReq,
    ViolatesTerminalReq,
};
inline constexpr int kVerdictCount = 7;

const char* to_string(Verdict v);

struct AuditInput {
    PotentialSpec spec;
    double q_init = 0.0;
    double r_inf = 0.0;
    double r_g = 1.0;
    // Whether environmental termination means reaching the goal. True for
    // goal-reaching tasks; false where termination is failure, in which case
    // Terminal transitions are audited like any other episode ending.
    bool terminal_is_goal = true;
};

struct TransitionVerdict {
    Verdict verdict = Verdict::IncentivizedCorrectly;
    bool boundary = false;  // shaped reward equals the threshold exactly
    double shaped_r = 0.0;
    double threshold = 0.0;
    double phi_s = 0.0;
    double phi_next = 0.0;  // NaN on episode-ending transitions

    // First-update direction implied by the comparison: +1 up, -1 down, 0 tie.
    int direction() const;
};

// Open interval every non-terminal potential must lie in (Eq.-scale bounds);
// infeasible when r_g <= r_inf.
struct PotentialBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool feasible = false;
};

struct AuditReport {
    std::vector<TransitionVerdict> verdicts;
    std::array<long, kVerdictCount> counts{};
    long boundary_count = 0;
    PotentialBounds bounds;
    double phi_min = 0.0, phi_max = 0.0;  // observed non-terminal potentials
    long outside_bounds = 0;              // observed potentials outside the open interval
    std::string summary() const;
};

TransitionVerdict classify_transition(const AuditInput& in, const Transition& t);
AuditReport audit_transitions(const AuditInput& in, const std::vector<Transition>& ts);
void write_verdict_csv(std::ostream& out, const std::vector<Transition>& ts,
                       const AuditReport& report);

PotentialBounds potential_bounds(double gamma, double q_init, double r_g, double r_inf);

// Largest potential improvement delta that still receives a negative shaping
// reward from a linear potential at phi_s >= 0 (the mirrored negative branch
// uses |phi_s|).
double min_delta_linear(double phi_s, double gamma, bool negative_branch = false);

// Delta threshold solving gamma * exp_base^delta = 1; with a matched bias it
// is independent of the previous potential.
double min_delta_exponential(double exp_base, double gamma);

// F(delta, phi) table for a linear (exp_base empty) or exponential potential.
struct SurfaceRow {
    bool exponential = false;
    double exp_base = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    double f = 0.0;
};

std::vector<SurfaceRow> shaping_surface(std::optional<double> exp_base, double gamma,
                                        std::span<const double> phi_grid,
                                        std::span<const double> delta_grid);
void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows,
                       const std::string& header_comment);
std::vector<SurfaceRow> read_surface_csv(std::istream& in);

}  // namespace pbrs
