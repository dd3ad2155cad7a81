#include "pbrs/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "pbrs/types.hpp"

namespace pbrs {

MLPQNet::MLPQNet(int in_dim, int hidden_dim, int out_dim)
    : in_(in_dim), hidden_(hidden_dim), out_(out_dim) {
    if (in_ < 1 || hidden_ < 1 || out_ < 1)
        throw ConfigError("MLPQNet: dimensions must be positive");
    params_.assign(static_cast<std::size_t>(b3()) + out_, 0.0);
}

MLPQNet MLPQNet::random_init(int in_dim, int hidden_dim, int out_dim, RngStream& rng) {
    MLPQNet net(in_dim, hidden_dim, out_dim);
    auto fill = [&](int offset, int count, int fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int i = 0; i < count; ++i)
            net.params_[offset + i] = rng.uniform(-bound, bound);
    };
    fill(net.w1(), hidden_dim * in_dim, in_dim);
    fill(net.b1(), hidden_dim, in_dim);
    fill(net.w2(), hidden_dim * hidden_dim, hidden_dim);
    fill(net.b2(), hidden_dim, hidden_dim);
    fill(net.w3(), out_dim * hidden_dim, hidden_dim);
    fill(net.b3(), out_dim, hidden_dim);
    return net;
}

void MLPQNet::forward(std::span<const double> obs, Workspace& ws) const {
    if (static_cast<int>(obs.size()) != in_)
        throw ContractViolation("MLPQNet::forward: observation dimension mismatch");
    const double* p = params_.data();
    ws.z1.resize(hidden_);
    ws.h1.resize(hidden_);
    ws.z2.resize(hidden_);
    ws.h2.resize(hidden_);
    ws.q.resize(out_);

    for (int j = 0; j < hidden_; ++j) {
        double acc = p[b1() + j];
        const double* row = p + w1() + j * in_;
        for (int i = 0; i < in_; ++i) acc += row[i] * obs[i];
        ws.z1[j] = acc;
        ws.h1[j] = acc > 0.0 ? acc : 0.0;
    }
    for (int k = 0; k < hidden_; ++k) {
        double acc = p[b2() + k];
        const double* row = p + w2() + k * hidden_;
        for (int j = 0; j < hidden_; ++j) acc += row[j] * ws.h1[j];
        ws.z2[k] = acc;
        ws.h2[k] = acc > 0.0 ? acc : 0.0;
    }
    for (int o = 0; o < out_; ++o) {
        double acc = p[b3() + o];
        const double* row = p + w3() + o * hidden_;
        for (int k = 0; k < hidden_; ++k) acc += row[k] * ws.h2[k];
        ws.q[o] = acc;
    }
}

std::vector<double> MLPQNet::predict(std::span<const double> obs) const {
    Workspace ws;
    forward(obs, ws);
    return ws.q;
}

double MLPQNet::max_q(std::span<const double> obs) const {
    thread_local Workspace ws;
    forward(obs, ws);
    return *std::max_element(ws.q.begin(), ws.q.end());
}

int MLPQNet::greedy_action(std::span<const double> obs) const {
    thread_local Workspace ws;
    forward(obs, ws);
    return static_cast<int>(std::max_element(ws.q.begin(), ws.q.end()) - ws.q.begin());
}

void MLPQNet::backward_accumulate(std::span<const double> obs, Workspace& ws,
                                  std::span<double> grad) const {
    if (grad.size() != params_.size())
        throw ContractViolation("MLPQNet::backward_accumulate: gradient buffer size mismatch");
    const double* p = params_.data();
    double* g = grad.data();
    ws.dz2.assign(hidden_, 0.0);
    ws.dz1.assign(hidden_, 0.0);

    for (int o = 0; o < out_; ++o) {
        const double d = ws.dq[o];
        if (d == 0.0) continue;
        g[b3() + o] += d;
        double* grow = g + w3() + o * hidden_;
        const double* wrow = p + w3() + o * hidden_;
        for (int k = 0; k < hidden_; ++k) {
            grow[k] += d * ws.h2[k];
            ws.dz2[k] += d * wrow[k];
        }
    }
    for (int k = 0; k < hidden_; ++k) {
        if (ws.z2[k] <= 0.0) {
            ws.dz2[k] = 0.0;
            continue;
        }
        const double d = ws.dz2[k];
        g[b2() + k] += d;
        double* grow = g + w2() + k * hidden_;
        const double* wrow = p + w2() + k * hidden_;
        for (int j = 0; j < hidden_; ++j) {
            grow[j] += d * ws.h1[j];
            ws.dz1[j] += d * wrow[j];
        }
    }
    for (int j = 0; j < hidden_; ++j) {
        if (ws.z1[j] <= 0.0) continue;
        const double d = ws.dz1[j];
        g[b1() + j] += d;
        double* grow = g + w1() + j * in_;
        for (int i = 0; i < in_; ++i) grow[i] += d * obs[i];
    }
}

void MLPQNet::save_csv(std::ostream& out) const {
    out << "# mlp checkpoint: text, one parameter per line, flat order [W1 b1 W2 b2 W3 b3]\n";
    out << "in,hidden,out\n" << in_ << ',' << hidden_ << ',' << out_ << '\n';
    for (double v : params_) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << '\n';
    }
}

MLPQNet MLPQNet::load_csv(std::istream& in) {
    std::string line;
    // skip comments and the column header
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line != "in,hidden,out") break;
    std::stringstream ss(line);
    std::string f[3];
    for (auto& x : f) std::getline(ss, x, ',');
    MLPQNet net(std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]));
    for (double& v : net.params_) {
        if (!std::getline(in, line)) throw ConfigError("MLPQNet::load_csv: truncated checkpoint");
        v = std::stod(line);
    }
    return net;
}

}  // namespace pbrs
