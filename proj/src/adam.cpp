#include "pbrs/adam.hpp"

#include <cmath>

#include "pbrs/types.hpp"

namespace pbrs {

void AdamState::step(std::span<double> params, std::span<const double> grad,
                     const AdamConfig& cfg) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw ContractViolation("AdamState::step: buffer size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < m_.size(); ++i) {
        m_[i] = cfg.beta1 * m_[i] + (1.0 - cfg.beta1) * grad[i];
        v_[i] = cfg.beta2 * v_[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
        const double m_hat = m_[i] / bc1;
        const double v_hat = v_[i] / bc2;
        params[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
}

}  // namespace pbrs
