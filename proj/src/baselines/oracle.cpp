#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fjsp/baselines.hpp"
#include "fjsp/environment.hpp"

namespace fjsp {

namespace {

struct StateKeyHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

class BranchAndBound {
public:
    BranchAndBound(const Instance& inst, const BaselineConfig& cfg)
        : inst_(inst), cfg_(cfg), t0_(std::chrono::steady_clock::now()) {
        for (const auto& job : inst.jobs) {
            auto& tail = tail_.emplace_back();
            tail.assign(job.size() + 1, 0);
            for (std::size_t o = job.size(); o-- > 0;) tail[o] = tail[o + 1] + job.operations[o].min_duration();
        }
    }

    void seed(const Schedule& incumbent) {
        best_ = makespan(incumbent);
        best_schedule_ = incumbent;
    }

    OracleResult run() {
        Environment env(inst_);
        env.set_record_trace(false);
        search(env);
        return {best_schedule_, best_, nodes_};
    }

private:
    // Largest of: the busiest job's remaining chain, and per machine its
    // running remainder plus the work only it can do.
    int lower_bound(const Environment& env) const {
        const EnvState& s = env.state();
        int bound = s.clock;
        std::vector<int> machine_load(static_cast<std::size_t>(inst_.machine_count), 0);
        for (JobId j = 0; j < inst_.job_count(); ++j) {
            const auto& tail = tail_[j];
            const int op = s.job_op[j];
            int rest;
            if (s.busy(j)) {
                rest = s.job_remaining[j] + tail[op + 1];
                machine_load[s.job_machine[j]] += s.job_remaining[j];
            } else {
                rest = tail[op];
            }
            bound = std::max(bound, s.clock + rest);
            const auto& ops = inst_.jobs[j].operations;
            for (std::size_t o = static_cast<std::size_t>(op + (s.busy(j) ? 1 : 0)); o < ops.size(); ++o)
                if (const auto& alts = ops[o].alternatives(); alts.size() == 1)
                    machine_load[alts.front().machine] += alts.front().duration;
        }
        for (int load : machine_load) bound = std::max(bound, s.clock + load);
        return bound;
    }

    std::vector<int> key(const EnvState& s) const {
        std::vector<int> k;
        k.reserve(s.job_op.size() * 3);
        k.insert(k.end(), s.job_op.begin(), s.job_op.end());
        k.insert(k.end(), s.job_machine.begin(), s.job_machine.end());
        k.insert(k.end(), s.job_remaining.begin(), s.job_remaining.end());
        return k;
    }

    void search(const Environment& env) {
        if (++nodes_ > cfg_.node_budget)
            throw BudgetExceeded("oracle node budget of " + std::to_string(cfg_.node_budget) + " exceeded");
        if ((nodes_ & 1023) == 0 && cfg_.time_budget_seconds > 0.0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count() >= cfg_.time_budget_seconds)
            throw BudgetExceeded("oracle time budget exceeded");
        if (env.done()) {
            if (env.clock() < best_) {
                best_ = env.clock();
                best_schedule_ = env.extract_schedule();
            }
            return;
        }
        if (lower_bound(env) >= best_) return;
        // The future only depends on the state relative to the clock.
        auto [it, fresh] = seen_.try_emplace(key(env.state()), env.clock());
        if (!fresh) {
            if (it->second <= env.clock()) return;
            it->second = env.clock();
        }
        const std::size_t n = env.legal_count();
        for (std::size_t a = 0; a < n; ++a) {
            Environment child = env;
            child.step(a);
            search(child);
        }
    }

    const Instance& inst_;
    const BaselineConfig& cfg_;
    std::chrono::steady_clock::time_point t0_;
    std::vector<std::vector<int>> tail_;  // tail_[j][o]: min work from op o to the end
    std::unordered_map<std::vector<int>, int, StateKeyHash> seen_;
    int best_ = std::numeric_limits<int>::max();
    Schedule best_schedule_;
    std::size_t nodes_ = 0;
};

}  // namespace

OracleResult exhaustive_oracle(const Instance& inst, const BaselineConfig& cfg) {
    cfg.validate();
    BranchAndBound bnb(inst, cfg);
    // A dispatching schedule gives the first upper bound; the search only
    // replaces it with strictly better ones, so the result stays optimal.
    Schedule a = mwkr(inst);
    Schedule b = fifo(inst);
    bnb.seed(makespan(a) <= makespan(b) ? a : b);
    try {
        return bnb.run();
    } catch (const std::length_error& e) {
        throw BudgetExceeded(std::string("oracle: ") + e.what());
    }
}

}  // namespace fjsp
