#pragma once

#include <cstddef>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "fjsp/environment.hpp"

namespace fjsp {

/// Tabular action values keyed by (observation, action index). Unseen pairs
/// read as 0, which bounds every achievable return (rewards are never
/// positive) from above.
///
/// Maximisation only ranks actions that have a stored value: once an
/// observation has estimates, untried actions do not outrank them. An
/// observation with nothing stored yields action 0 and value 0.
class QTable {
public:
    double value(const Observation& s, std::size_t action) const;
    bool contains(const Observation& s, std::size_t action) const;
    void set(const Observation& s, std::size_t action, double v);

    /// Best stored value among actions [0, legal_count); 0 when none is stored.
    double max_value(const Observation& s, std::size_t legal_count) const;
    /// Index of that value, lowest index on ties; 0 when none is stored.
    std::size_t argmax(const Observation& s, std::size_t legal_count) const;

    std::size_t size() const noexcept { return pairs_; }
    std::size_t state_count() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return pairs_ == 0; }

    /// Flat text dump: a `# fjsp-qtable v1` header, then one
    /// `<comma-separated key> <action> <value>` line per stored pair, sorted.
    void save(std::ostream& out) const;
    static QTable load(std::istream& in);

private:
    struct Row {
        std::vector<double> q;
        std::vector<char> seen;
    };
    const Row* row(const Observation& s) const;

    std::unordered_map<Observation, Row, ObservationHash> rows_;
    std::size_t pairs_ = 0;
};

}  // namespace fjsp
