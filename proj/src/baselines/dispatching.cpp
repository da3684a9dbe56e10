#include <algorithm>
#include <functional>
#include <numeric>

#include "fjsp/baselines.hpp"
#include "fjsp/environment.hpp"

namespace fjsp {

namespace {

// Higher priority first, lower job id on ties. Each job takes its fastest
// free machine, lower machine id on ties.
Schedule dispatch(const Instance& inst, const std::function<double(const EnvState&, JobId)>& priority) {
    Environment env(inst);
    env.set_record_trace(false);
    const int n = inst.job_count();
    while (!env.done()) {
        const EnvState& s = env.state();
        std::vector<JobId> open;
        for (JobId j = 0; j < n; ++j)
            if (!s.busy(j) && s.job_op[j] < static_cast<int>(inst.jobs[j].size())) open.push_back(j);
        std::vector<double> key(static_cast<std::size_t>(n), 0.0);
        for (JobId j : open) key[j] = priority(s, j);
        std::stable_sort(open.begin(), open.end(), [&](JobId a, JobId b) { return key[a] > key[b]; });

        Allocation alloc(static_cast<std::size_t>(n), kWait);
        std::vector<char> taken(static_cast<std::size_t>(inst.machine_count), 0);
        for (JobId j : open) {
            MachineId best = kWait;
            Duration best_d = 0;
            for (const auto& alt : inst.operation(j, s.job_op[j]).alternatives()) {
                if (taken[alt.machine] || !s.machine_free(alt.machine)) continue;
                if (best == kWait || alt.duration < best_d) {
                    best = alt.machine;
                    best_d = alt.duration;
                }
            }
            if (best != kWait) {
                alloc[j] = best;
                taken[best] = 1;
            }
        }
        env.step_allocation(alloc);
    }
    return env.extract_schedule();
}

}  // namespace

Schedule fifo(const Instance& inst) {
    return dispatch(inst, [](const EnvState& s, JobId j) { return static_cast<double>(s.clock - s.job_ready[j]); });
}

Schedule mwkr(const Instance& inst, DurationEstimate estimate) {
    const auto durations = mean_durations(inst, estimate);
    return dispatch(inst, [&](const EnvState& s, JobId j) {
        const auto& row = durations[j];
        return std::accumulate(row.begin() + s.job_op[j], row.end(), 0.0);
    });
}

}  // namespace fjsp
