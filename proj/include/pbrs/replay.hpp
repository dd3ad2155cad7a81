#pragma once

#include <cstddef>
#include <vector>

#include "pbrs/rng.hpp"
#include "pbrs/types.hpp"

namespace pbrs {

// Transition as stored for replay; the reward is shaped exactly once, at
// storage time, so re-sampling never re-shapes it.
struct StoredTransition {
    std::vector<double> s;
    std::vector<double> s_next;
    int a = 0;
    double r = 0.0;
    TerminationKind kind = TerminationKind::NonTerminal;
};

// Fixed-capacity ring buffer with uniform batch sampling (without
// replacement within a batch).
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(StoredTransition t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    const StoredTransition& operator[](std::size_t i) const { return data_[i]; }

    void sample_indices(std::size_t batch, RngStream& rng,
                        std::vector<std::size_t>& out) const;

private:
    std::vector<StoredTransition> data_;
    std::size_t capacity_;
    std::size_t write_ = 0;
};

}  // namespace pbrs
