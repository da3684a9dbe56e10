#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fjsp/environment.hpp"
#include "fjsp/instance.hpp"

namespace testing {

inline std::filesystem::path data_file(const std::string& name) { return std::filesystem::path(FJSP_DATA_DIR) / name; }

inline fjsp::Instance toy() { return fjsp::load_instance(data_file("toy.fjs")); }
inline fjsp::Instance ft06() { return fjsp::load_instance(data_file("ft06.fjs")); }
inline fjsp::Instance la05() { return fjsp::load_instance(data_file("la05.fjs")); }

inline fjsp::Instance make(int machines, const std::vector<std::vector<std::vector<fjsp::Alternative>>>& jobs,
                           std::string name = "handmade") {
    fjsp::Instance inst;
    inst.name = std::move(name);
    inst.machine_count = machines;
    for (const auto& job : jobs) {
        fjsp::JobSpec spec;
        for (const auto& alts : job) spec.operations.emplace_back(alts);
        inst.jobs.push_back(std::move(spec));
    }
    return inst;
}

inline fjsp::Instance one_by_one() { return make(1, {{{{0, 5}}}}, "one"); }

struct RandomShape {
    int min_jobs = 2, max_jobs = 3;
    int min_machines = 2, max_machines = 3;
    int max_ops = 3;
    int max_duration = 10;
};

/// Each operation gets a random non-empty machine subset.
inline fjsp::Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    fjsp::Instance inst;
    inst.name = "random";
    inst.machine_count = uniform(shape.min_machines, shape.max_machines);
    const int n = uniform(shape.min_jobs, shape.max_jobs);
    for (int j = 0; j < n; ++j) {
        fjsp::JobSpec job;
        const int ops = uniform(1, shape.max_ops);
        for (int o = 0; o < ops; ++o) {
            std::vector<fjsp::Alternative> alts;
            for (int m = 0; m < inst.machine_count; ++m)
                if (uniform(0, 1) == 1) alts.push_back({m, uniform(1, shape.max_duration)});
            if (alts.empty()) alts.push_back({uniform(0, inst.machine_count - 1), uniform(1, shape.max_duration)});
            job.operations.emplace_back(std::move(alts));
        }
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

/// Every vector in {0..m-1, WAIT}^n that is executable and reasonable, in
/// job-major order with WAIT ranked after all machines. Written against the
/// raw state, independently of the environment's enumerator.
inline std::vector<fjsp::Allocation> brute_force_legal(const fjsp::Instance& inst, const fjsp::EnvState& s) {
    const int n = inst.job_count();
    const int m = inst.machine_count;
    bool all_idle = true;
    for (int j = 0; j < n; ++j) all_idle = all_idle && s.job_machine[j] == fjsp::kIdle;
    for (int k = 0; k < m; ++k) all_idle = all_idle && s.machine_job[k] < 0;

    std::vector<fjsp::Allocation> out;
    std::vector<int> digit(static_cast<std::size_t>(n), 0);  // m stands for WAIT
    while (true) {
        fjsp::Allocation a(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) a[j] = digit[j] == m ? fjsp::kWait : digit[j];

        bool ok = true;
        bool any = false;
        std::vector<int> used(static_cast<std::size_t>(m), 0);
        for (int j = 0; j < n && ok; ++j) {
            if (a[j] == fjsp::kWait) continue;
            any = true;
            const bool finished = s.job_op[j] >= static_cast<int>(inst.jobs[j].size());
            ok = !finished && s.job_machine[j] == fjsp::kIdle                       // condition 2
                 && inst.jobs[j].operations[s.job_op[j]].runs_on(a[j])              // condition 1
                 && s.machine_job[a[j]] < 0                                         // condition 3
                 && used[a[j]]++ == 0;                                              // condition 4
        }
        if (ok && !(all_idle && !any)) out.push_back(a);

        int pos = n - 1;
        while (pos >= 0 && digit[pos] == m) digit[pos--] = 0;
        if (pos < 0) break;
        ++digit[pos];
    }
    // A state where nothing can be assigned offers no decision at all.
    if (out.size() == 1 && std::all_of(out[0].begin(), out[0].end(), [](int x) { return x == fjsp::kWait; }))
        out.clear();
    return out;
}

}  // namespace testing
