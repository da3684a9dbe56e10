#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

struct BaselineConfig {
    int episodes = 10000;  // random sampling
    std::uint64_t seed = 0;

    int population = 50;
    int generations = 200;
    double crossover_rate = 0.8;
    double mutation_rate = 0.2;
    /// Generations without a better best chromosome before the GA stops.
    int stagnation_limit = 50;

    std::size_t node_budget = 5'000'000;  // oracle search nodes
    /// Wall-clock limit for RS, GA and the oracle; 0 disables it.
    double time_budget_seconds = 0.0;

    DurationEstimate remaining_work = DurationEstimate::Mean;  // MWKR

    void validate() const;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Best of cfg.episodes uniformly random legal rollouts (first best on ties).
Schedule random_sampling(const Instance& inst, const BaselineConfig& cfg);

/// Dispatching by longest waiting time since the job last became idle.
Schedule fifo(const Instance& inst);

/// Dispatching by most remaining work (current operation through the last).
Schedule mwkr(const Instance& inst, DurationEstimate estimate = DurationEstimate::Mean);

/// Operation-based chromosome: each job id repeated once per operation.
using Chromosome = std::vector<JobId>;

/// Semi-active decoding; each operation takes the machine that finishes it earliest.
Schedule decode_chromosome(const Instance& inst, const Chromosome& genes);

Schedule genetic(const Instance& inst, const BaselineConfig& cfg);

struct OracleResult {
    Schedule schedule;
    int makespan = 0;
    std::size_t nodes = 0;
};

/// Branch-and-bound over every legal allocation sequence of the environment.
/// Throws BudgetExceeded when the node or time budget runs out, or when a
/// state has more legal allocations than the environment will enumerate.
OracleResult exhaustive_oracle(const Instance& inst, const BaselineConfig& cfg);

}  // namespace fjsp
