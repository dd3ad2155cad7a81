#pragma once

#include <span>
#include <vector>

namespace pbrs {

struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Bias-corrected Adam over a flat parameter buffer.
class AdamState {
public:
    explicit AdamState(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}

    void step(std::span<double> params, std::span<const double> grad, const AdamConfig& cfg);
    long step_count() const { return t_; }

private:
    std::vector<double> m_, v_;
    long t_ = 0;
};

}  // namespace pbrs
