#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "fjsp/baselines.hpp"

namespace fjsp {

Schedule decode_chromosome(const Instance& inst, const Chromosome& genes) {
    std::vector<int> next_op(inst.jobs.size(), 0);
    std::vector<int> job_end(inst.jobs.size(), 0);
    std::vector<int> machine_end(static_cast<std::size_t>(inst.machine_count), 0);
    Schedule sched;
    sched.entries.reserve(genes.size());
    for (JobId j : genes) {
        const int op = next_op[j]++;
        const auto& alts = inst.operation(j, op).alternatives();
        const Alternative* pick = nullptr;
        int pick_end = 0;
        for (const auto& alt : alts) {
            const int end = std::max(job_end[j], machine_end[alt.machine]) + alt.duration;
            if (!pick || end < pick_end) {
                pick = &alt;
                pick_end = end;
            }
        }
        const int start = pick_end - pick->duration;
        sched.entries.push_back({j, op, pick->machine, start, pick_end});
        job_end[j] = pick_end;
        machine_end[pick->machine] = pick_end;
    }
    sched.canonicalize();
    return sched;
}

namespace {

struct Individual {
    Chromosome genes;
    int makespan = 0;
};

// Precedence-preserving order crossover: genes of a random job subset keep
// their positions from `keep`; the rest are filled in the order of `fill`.
Chromosome pox(const Chromosome& keep, const Chromosome& fill, const std::vector<char>& subset) {
    Chromosome child(keep.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (subset[keep[i]]) child[i] = keep[i];
    std::size_t k = 0;
    for (JobId g : fill) {
        if (subset[g]) continue;
        while (child[k] != -1) ++k;
        child[k] = g;
    }
    return child;
}

}  // namespace

Schedule genetic(const Instance& inst, const BaselineConfig& cfg) {
    cfg.validate();
    inst.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    Chromosome base;
    for (JobId j = 0; j < inst.job_count(); ++j) base.insert(base.end(), inst.jobs[j].size(), j);
    auto evaluate = [&](Chromosome genes) {
        Individual ind{std::move(genes), 0};
        ind.makespan = makespan(decode_chromosome(inst, ind.genes));
        return ind;
    };

    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(cfg.population));
    for (int i = 0; i < cfg.population; ++i) {
        Chromosome genes = base;
        std::shuffle(genes.begin(), genes.end(), rng);
        pop.push_back(evaluate(std::move(genes)));
    }
    auto by_makespan = [](const Individual& a, const Individual& b) { return a.makespan < b.makespan; };
    std::stable_sort(pop.begin(), pop.end(), by_makespan);

    std::uniform_int_distribution<std::size_t> any(0, pop.size() - 1);
    auto tournament = [&]() -> const Individual& {
        const Individual& a = pop[any(rng)];
        const Individual& b = pop[any(rng)];
        return b.makespan < a.makespan ? b : a;
    };
    auto mutate = [&](Chromosome& genes) {
        if (genes.size() < 2 || coin(rng) >= cfg.mutation_rate) return;
        std::uniform_int_distribution<std::size_t> pos(0, genes.size() - 1);
        std::swap(genes[pos(rng)], genes[pos(rng)]);
    };

    int best = pop.front().makespan;
    int stale = 0;
    for (int g = 0; g < cfg.generations; ++g) {
        std::vector<Individual> next = pop;
        while (next.size() < 2 * pop.size()) {
            Chromosome c1 = tournament().genes;
            Chromosome c2 = tournament().genes;
            if (coin(rng) < cfg.crossover_rate) {
                std::vector<char> subset(inst.jobs.size(), 0);
                for (auto& s : subset) s = coin(rng) < 0.5;
                Chromosome a = pox(c1, c2, subset);
                Chromosome b = pox(c2, c1, subset);
                c1 = std::move(a);
                c2 = std::move(b);
            }
            mutate(c1);
            mutate(c2);
            next.push_back(evaluate(std::move(c1)));
            if (next.size() < 2 * pop.size()) next.push_back(evaluate(std::move(c2)));
        }
        // (mu + lambda) elitism: parents first, so ties keep the incumbent.
        std::stable_sort(next.begin(), next.end(), by_makespan);
        next.resize(pop.size());
        pop = std::move(next);

        if (pop.front().makespan < best) {
            best = pop.front().makespan;
            stale = 0;
        } else if (++stale >= cfg.stagnation_limit) {
            break;
        }
        if (cfg.time_budget_seconds > 0.0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >= cfg.time_budget_seconds)
            break;
    }
    return decode_chromosome(inst, pop.front().genes);
}

}  // namespace fjsp
