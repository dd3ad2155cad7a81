#include "pbrs/curve.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pbrs/types.hpp"

namespace pbrs {

namespace {

// Sample standard deviation / sqrt(n); 0 by convention for n = 1.
double sem(const std::vector<double>& xs, double mean) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

LearningCurve aggregate(const std::vector<std::vector<EvalPoint>>& per_seed) {
    if (per_seed.empty()) throw std::invalid_argument("aggregate: no curves");
    const std::size_t n_points = per_seed.front().size();
    for (const auto& c : per_seed)
        if (c.size() != n_points)
            throw ContractViolation("aggregate: curves have different lengths");

    LearningCurve out;
    out.rows.reserve(n_points);
    std::vector<double> lens(per_seed.size()), rets(per_seed.size());
    for (std::size_t i = 0; i < n_points; ++i) {
        const long step = per_seed.front()[i].step;
        double sum_len = 0.0, sum_ret = 0.0;
        for (std::size_t k = 0; k < per_seed.size(); ++k) {
            if (per_seed[k][i].step != step)
                throw ContractViolation("aggregate: step grids are misaligned");
            lens[k] = per_seed[k][i].mean_len;
            rets[k] = per_seed[k][i].mean_return;
            sum_len += lens[k];
            sum_ret += rets[k];
        }
        CurveRow row;
        row.step = step;
        row.n_runs = static_cast<int>(per_seed.size());
        row.mean_len = sum_len / row.n_runs;
        row.mean_return = sum_ret / row.n_runs;
        row.sem_len = sem(lens, row.mean_len);
        row.sem_return = sem(rets, row.mean_return);
        out.rows.push_back(row);
    }
    return out;
}

void write_eval_csv(std::ostream& out, const std::vector<EvalPoint>& curve,
                    const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "step,mean_len,mean_return\n";
    for (const EvalPoint& p : curve)
        out << p.step << ',' << format_double(p.mean_len) << ','
            << format_double(p.mean_return) << '\n';
}

std::vector<EvalPoint> read_eval_csv(std::istream& in) {
    std::vector<EvalPoint> curve;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string step, len, ret;
        std::getline(ss, step, ',');
        std::getline(ss, len, ',');
        std::getline(ss, ret, ',');
        curve.push_back({std::stol(step), std::stod(len), std::stod(ret)});
    }
    return curve;
}

void write_curve_csv(std::ostream& out, const LearningCurve& curve,
                     const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << "step,mean_len,sem_len,mean_return,sem_return,n_runs\n";
    for (const CurveRow& r : curve.rows)
        out << r.step << ',' << format_double(r.mean_len) << ',' << format_double(r.sem_len)
            << ',' << format_double(r.mean_return) << ',' << format_double(r.sem_return)
            << ',' << r.n_runs << '\n';
}

LearningCurve read_curve_csv(std::istream& in) {
    LearningCurve curve;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string f[6];
        for (auto& x : f) std::getline(ss, x, ',');
        CurveRow row;
        row.step = std::stol(f[0]);
        row.mean_len = std::stod(f[1]);
        row.sem_len = std::stod(f[2]);
        row.mean_return = std::stod(f[3]);
        row.sem_return = std::stod(f[4]);
        row.n_runs = std::stoi(f[5]);
        curve.rows.push_back(row);
    }
    return curve;
}

}  // namespace pbrs
