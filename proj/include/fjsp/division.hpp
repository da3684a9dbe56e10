#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fjsp/environment.hpp"
#include "fjsp/instance.hpp"
#include "fjsp/qlearning.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

enum class SplitStrategy { ByOpCount, ByMeanDuration };

/// How an instance was cut. cuts[j] has parts + 1 entries: segment k of job j
/// is operations [cuts[j][k], cuts[j][k + 1]).
struct SplitPlan {
    SplitStrategy strategy = SplitStrategy::ByOpCount;
    int parts = 0;
    std::vector<std::vector<int>> cuts;
    Instance original;

    int segment_begin(JobId job, int k) const { return cuts.at(job).at(k); }
    int segment_end(JobId job, int k) const { return cuts.at(job).at(k + 1); }
};

struct SplitResult {
    std::vector<Instance> instances;  // one per segment; jobs keep their index
    SplitPlan plan;
};

/// ByOpCount: contiguous runs of equal length, earlier segments one longer
/// when the count does not divide. ByMeanDuration: each operation goes to the
/// segment containing its start on the job's own timeline of expected
/// durations.
SplitResult split(const Instance& inst, SplitStrategy strategy, int parts,
                  DurationEstimate estimate = DurationEstimate::Mean);

/// Segments 1..k (1-based) concatenated per job.
Instance combine(const SplitPlan& plan, int k);

/// Machine and per-machine order of operations fixed by an earlier stage.
/// Start times stay free.
class PolicyConstraint final : public AssignmentMask {
public:
    PolicyConstraint() = default;
    /// Fixes every operation of `sched` to its machine, ordered by start time.
    static PolicyConstraint from_schedule(const Schedule& sched, int machine_count);

    bool empty() const noexcept { return machine_of_.empty(); }
    std::size_t size() const noexcept { return machine_of_.size(); }
    bool covers(JobId job, int op) const { return machine_of_.count({job, op}) != 0; }
    MachineId machine(JobId job, int op) const { return machine_of_.at({job, op}); }
    const std::vector<std::pair<JobId, int>>& order(MachineId m) const { return order_.at(m); }

    bool allows(const EnvState& state, JobId job, int op, MachineId machine) const override;

private:
    std::map<std::pair<JobId, int>, MachineId> machine_of_;
    std::map<std::pair<JobId, int>, std::size_t> rank_;  // position in its machine's order
    std::vector<std::vector<std::pair<JobId, int>>> order_;
};

struct StagePolicy {
    std::vector<Allocation> allocations;  // decisions of the best episode, in order
    PolicyConstraint constraint;
    Schedule schedule;
    int makespan = 0;
    bool fell_back = false;  // constraint was infeasible, solved without it
    TrainingReport report;
};

/// Trains on `inst` with the action space restricted by `prev` (may be empty).
StagePolicy get_best_policy(const Instance& inst, const PolicyConstraint& prev, const LearnerConfig& cfg);

struct DivisionResult {
    Schedule schedule;
    int makespan = 0;
    SplitPlan plan;
    std::vector<StagePolicy> stages;
    std::vector<std::string> log;
};

/// Solves stage by stage, each stage fixing the previous stage's machines and
/// order. parts == 1 is plain training. The result is validated.
DivisionResult solve_divided(const Instance& inst, SplitStrategy strategy, int parts, const LearnerConfig& cfg,
                             DurationEstimate estimate = DurationEstimate::Mean);

}  // namespace fjsp
