#pragma once

#include <cstddef>
#include <vector>

#include "fjsp/environment.hpp"
#include "fjsp/qtable.hpp"

namespace fjsp {

/// State-action pairs visited during one episode and the rewards received.
struct EpisodeTrace {
    std::vector<Observation> states;
    std::vector<std::size_t> actions;
    std::vector<int> rewards;

    void push(Observation s, std::size_t a, int r) {
        states.push_back(std::move(s));
        actions.push_back(a);
        rewards.push_back(r);
    }
    std::size_t size() const noexcept { return actions.size(); }
    void clear() noexcept {
        states.clear();
        actions.clear();
        rewards.clear();
    }
};

enum class BackwardOrder {
    /// Store, then accumulate: the stored value at step k is the reward
    /// collected strictly after action k.
    StoreThenAccumulate,
    /// Accumulate, then store: the stored value includes r_k itself.
    AccumulateThenStore,
};

/// Walks the trace from the end, writing the cumulative reward into the
/// table wherever it is at least as good as the stored value. Pairs not yet
/// in the table are always written.
void backward_pass(QTable& q, const EpisodeTrace& trace,
                   BackwardOrder order = BackwardOrder::StoreThenAccumulate);

/// The stored heuristic for (s, a); 0 when unseen.
double heuristic_value(const QTable& q, const Observation& s, std::size_t action);

}  // namespace fjsp
