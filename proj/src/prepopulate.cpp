#include "fjsp/prepopulate.hpp"

#include <stdexcept>

namespace fjsp {

void backward_pass(QTable& q, const EpisodeTrace& trace, BackwardOrder order) {
    if (trace.states.size() != trace.actions.size() || trace.actions.size() != trace.rewards.size())
        throw std::invalid_argument("episode trace has mismatched lengths");
    double cumulative = 0.0;
    for (std::size_t k = trace.size(); k-- > 0;) {
        const auto& s = trace.states[k];
        const auto a = trace.actions[k];
        if (order == BackwardOrder::AccumulateThenStore) cumulative += trace.rewards[k];
        if (!q.contains(s, a) || q.value(s, a) <= cumulative) q.set(s, a, cumulative);
        if (order == BackwardOrder::StoreThenAccumulate) cumulative += trace.rewards[k];
    }
}

double heuristic_value(const QTable& q, const Observation& s, std::size_t action) {
    return q.value(s, action);
}

}  // namespace fjsp
