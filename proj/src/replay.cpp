#include "pbrs/replay.hpp"

#include <algorithm>

namespace pbrs {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("ReplayBuffer: capacity must be > 0");
    data_.reserve(std::min<std::size_t>(capacity_, 4096));
}

void ReplayBuffer::push(StoredTransition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[write_] = std::move(t);
    }
    write_ = (write_ + 1) % capacity_;
}

void ReplayBuffer::sample_indices(std::size_t batch, RngStream& rng,
                                  std::vector<std::size_t>& out) const {
    if (batch > data_.size())
        throw ContractViolation("ReplayBuffer: batch larger than buffer");
    out.clear();
    out.reserve(batch);
    while (out.size() < batch) {
        const std::size_t i = rng.next_below(static_cast<std::uint32_t>(data_.size()));
        if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
}

}  // namespace pbrs
