#include "fjsp/qtable.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fjsp {

const QTable::Row* QTable::row(const Observation& s) const {
    auto it = rows_.find(s);
    return it == rows_.end() ? nullptr : &it->second;
}

double QTable::value(const Observation& s, std::size_t action) const {
    const Row* r = row(s);
    if (!r || action >= r->q.size()) return 0.0;
    return r->q[action];
}

bool QTable::contains(const Observation& s, std::size_t action) const {
    const Row* r = row(s);
    return r && action < r->seen.size() && r->seen[action];
}

void QTable::set(const Observation& s, std::size_t action, double v) {
    Row& r = rows_[s];
    if (action >= r.q.size()) {
        r.q.resize(action + 1, 0.0);
        r.seen.resize(action + 1, 0);
    }
    if (!r.seen[action]) {
        r.seen[action] = 1;
        ++pairs_;
    }
    r.q[action] = v;
}

double QTable::max_value(const Observation& s, std::size_t legal_count) const {
    if (legal_count == 0) return 0.0;
    return value(s, argmax(s, legal_count));
}

std::size_t QTable::argmax(const Observation& s, std::size_t legal_count) const {
    const Row* r = row(s);
    if (!r) return 0;
    const std::size_t limit = std::min(legal_count, r->q.size());
    std::size_t best = 0;
    bool found = false;
    for (std::size_t a = 0; a < limit; ++a) {
        if (!r->seen[a]) continue;
        if (!found || r->q[a] > r->q[best]) {
            best = a;
            found = true;
        }
    }
    return best;
}

void QTable::save(std::ostream& out) const {
    std::vector<std::pair<std::vector<int>, const Row*>> sorted;
    sorted.reserve(rows_.size());
    for (const auto& [key, r] : rows_) sorted.emplace_back(key.merged(), &r);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    out << "# fjsp-qtable v1\n";
    char buf[64];
    for (const auto& [key, r] : sorted) {
        std::string k;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i) k += ',';
            k += std::to_string(key[i]);
        }
        for (std::size_t a = 0; a < r->q.size(); ++a) {
            if (!r->seen[a]) continue;
            std::snprintf(buf, sizeof buf, "%.17g", r->q[a]);
            out << k << ' ' << a << ' ' << buf << '\n';
        }
    }
}

QTable QTable::load(std::istream& in) {
    QTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# fjsp-qtable v1", 0) != 0)
        throw std::runtime_error("missing '# fjsp-qtable v1' header");
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string key;
        std::size_t action = 0;
        double v = 0.0;
        if (!(fields >> key >> action >> v))
            throw std::runtime_error("q-table line " + std::to_string(number) + " is malformed");
        std::vector<int> merged;
        std::istringstream parts(key);
        std::string part;
        while (std::getline(parts, part, ',')) merged.push_back(std::stoi(part));
        if (merged.size() % 2 != 0)
            throw std::runtime_error("q-table line " + std::to_string(number) + " has an odd-length key");
        table.set(Observation(std::move(merged)), action, v);
    }
    return table;
}

}  // namespace fjsp
