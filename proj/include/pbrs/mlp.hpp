#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "pbrs/rng.hpp"

namespace pbrs {

// Feed-forward Q-network: input -> hidden -> hidden -> output with
// rectified-linear hidden activations. Parameters live in one flat buffer
// laid out [W1 b1 W2 b2 W3 b3], weight matrices row-major by output unit.
class MLPQNet {
public:
    MLPQNet(int in_dim, int hidden_dim, int out_dim);

    // Weights and biases uniform in +-1/sqrt(fan_in).
    static MLPQNet random_init(int in_dim, int hidden_dim, int out_dim, RngStream& rng);

    int in_dim() const { return in_; }
    int hidden_dim() const { return hidden_; }
    int out_dim() const { return out_; }
    int param_count() const { return static_cast<int>(params_.size()); }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    struct Workspace {
        std::vector<double> z1, h1, z2, h2, q, dq, dz1, dz2;
    };

    void forward(std::span<const double> obs, Workspace& ws) const;
    // Convenience forward without retained activations.
    std::vector<double> predict(std::span<const double> obs) const;
    double max_q(std::span<const double> obs) const;
    // Lowest-index maximizer.
    int greedy_action(std::span<const double> obs) const;

    // Accumulates dL/dparams into grad given dL/dq in ws.dq and the
    // activations left by the matching forward() call.
    void backward_accumulate(std::span<const double> obs, Workspace& ws,
                             std::span<double> grad) const;

    // Parameter dump with a plain-text header carrying the layer shapes.
    void save_csv(std::ostream& out) const;
    static MLPQNet load_csv(std::istream& in);

private:
    int in_, hidden_, out_;
    std::vector<double> params_;

    // flat-buffer section offsets
    int w1() const { return 0; }
    int b1() const { return hidden_ * in_; }
    int w2() const { return b1() + hidden_; }
    int b2() const { return w2() + hidden_ * hidden_; }
    int w3() const { return b2() + hidden_; }
    int b3() const { return w3() + out_ * hidden_; }
};

}  // namespace pbrs
