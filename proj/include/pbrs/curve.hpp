#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbrs {

// One evaluation pause of a single training run: mean episode length and mean
// undiscounted (original-reward) return over the evaluation episodes.
struct EvalPoint {
    long step = 0;
    double mean_len = 0.0;
    double mean_return = 0.0;
};

struct CurveRow {
    long step = 0;
    double mean_len = 0.0, sem_len = 0.0;
    double mean_return = 0.0, sem_return = 0.0;
    int n_runs = 0;
};

struct LearningCurve {
    std::vector<CurveRow> rows;
};

// Pointwise mean and standard error of the mean (sample stddev / sqrt(n))
// across per-seed curves. All curves must share the same step grid; a single
// curve aggregates with sem 0 and n_runs 1.
LearningCurve aggregate(const std::vector<std::vector<EvalPoint>>& per_seed);

void write_eval_csv(std::ostream& out, const std::vector<EvalPoint>& curve,
                    const std::string& header_comment);
std::vector<EvalPoint> read_eval_csv(std::istream& in);

void write_curve_csv(std::ostream& out, const LearningCurve& curve,
                     const std::string& header_comment);
LearningCurve read_curve_csv(std::istream& in);

}  // namespace pbrs
