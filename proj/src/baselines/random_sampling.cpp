#include <chrono>
#include <limits>
#include <random>

#include "fjsp/baselines.hpp"
#include "fjsp/environment.hpp"

namespace fjsp {

void BaselineConfig::validate() const {
    if (episodes < 1) throw std::invalid_argument("episodes must be positive");
    if (population < 1) throw std::invalid_argument("population must be positive");
    if (generations < 1) throw std::invalid_argument("generations must be positive");
    if (stagnation_limit < 1) throw std::invalid_argument("stagnation limit must be positive");
    if (node_budget < 1) throw std::invalid_argument("node budget must be positive");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw std::invalid_argument("crossover rate must be in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw std::invalid_argument("mutation rate must be in [0, 1]");
    if (time_budget_seconds < 0.0) throw std::invalid_argument("time budget must be non-negative");
}

Schedule random_sampling(const Instance& inst, const BaselineConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Environment env(inst);
    env.set_record_trace(false);
    std::mt19937_64 rng(cfg.seed);

    Schedule best;
    int best_makespan = std::numeric_limits<int>::max();
    for (int e = 0; e < cfg.episodes; ++e) {
        env.reset();
        while (!env.done()) {
            std::uniform_int_distribution<std::size_t> pick(0, env.legal_count() - 1);
            env.step(pick(rng));
        }
        if (env.clock() < best_makespan) {
            best_makespan = env.clock();
            best = env.extract_schedule();
        }
        if (cfg.time_budget_seconds > 0.0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >= cfg.time_budget_seconds)
            break;
    }
    return best;
}

}  // namespace fjsp
