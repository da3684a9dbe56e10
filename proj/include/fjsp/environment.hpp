#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

/// Allocation status of a job that is not on any machine.
inline constexpr MachineId kIdle = -1;
/// Allocation entry that leaves a job unassigned for this decision.
inline constexpr MachineId kWait = -1;

/// What the agent sees: per-job assigned machine (or kIdle) followed by
/// per-job current operation index. A finished job's operation index equals
/// its operation count. The merged vector is the Q-table key.
class Observation {
public:
    Observation() = default;
    explicit Observation(std::vector<int> merged) : values_(std::move(merged)) {}

    int job_count() const noexcept { return static_cast<int>(values_.size() / 2); }
    MachineId allocation(JobId job) const { return values_[job]; }
    int operation(JobId job) const { return values_[values_.size() / 2 + job]; }
    const std::vector<int>& merged() const noexcept { return values_; }

    friend bool operator==(const Observation&, const Observation&) = default;

private:
    std::vector<int> values_;
};

struct ObservationHash {
    std::size_t operator()(const Observation& obs) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (int v : obs.merged()) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/// Per-job machine or kWait.
using Allocation = std::vector<MachineId>;

struct TraceStep {
    Observation observation;
    std::size_t action = 0;  // npos when stepped by allocation without enumerating
    Allocation allocation;
    int clock = 0;
};

struct EnvState {
    int clock = 0;
    std::vector<int> job_op;           // current operation; == op count once finished
    std::vector<MachineId> job_machine;  // kIdle unless processing
    std::vector<int> job_remaining;    // 0 unless processing
    std::vector<int> job_ready;        // clock at which the job last became idle
    std::vector<JobId> machine_job;    // -1 when the machine is free
    std::vector<TraceStep> trace;
    std::vector<ScheduleEntry> records;

    bool busy(JobId job) const noexcept { return job_machine[job] != kIdle; }
    bool machine_free(MachineId m) const noexcept { return machine_job[m] < 0; }
};

struct StepResult {
    Observation observation;
    int reward = 0;  // clock before minus clock after, never positive
    bool done = false;
    int clock = 0;
};

/// Extra restriction on which (job, current op, machine) assignments are
/// allowed. Used by instance division to replay an earlier stage's policy.
class AssignmentMask {
public:
    virtual ~AssignmentMask() = default;
    virtual bool allows(const EnvState& state, JobId job, int op, MachineId machine) const = 0;
};

/// Raised when a mask leaves a non-terminal state with nothing to do and
/// nothing running.
class InfeasibleState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic flexible job-shop environment.
///
/// The agent only ever sees valid states: states where at least one job can
/// be put on a machine, or the terminal state. After an action the clock is
/// advanced from completion to completion until that holds. Actions index
/// into legal_allocations(), which is enumerated depth-first over jobs with
/// machines ascending and kWait last.
///
/// The environment keeps a pointer to the instance and the mask; both must
/// outlive it.
class Environment {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    static constexpr std::size_t kMaxAllocations = 1u << 22;

    explicit Environment(const Instance& inst, const AssignmentMask* mask = nullptr);
    Environment(Instance&&, const AssignmentMask* = nullptr) = delete;

    Observation reset();

    const Instance& instance() const noexcept { return *inst_; }
    const EnvState& state() const noexcept { return state_; }
    Observation observation() const;
    bool done() const noexcept;
    int clock() const noexcept { return state_.clock; }

    std::size_t legal_count() const;
    std::span<const MachineId> allocation(std::size_t index) const;
    std::vector<Allocation> legal_allocations() const;
    std::size_t index_of(const Allocation& alloc) const;

    StepResult step(std::size_t action);
    /// Steps with an explicit allocation; it must be one of the legal ones.
    StepResult step_allocation(const Allocation& alloc);

    Schedule extract_schedule() const;

    /// Whether any idle job can currently be placed on a free machine.
    bool has_assignable() const;

    /// Drop per-step trace recording (records for the schedule are kept).
    void set_record_trace(bool on) noexcept { record_trace_ = on; }

private:
    void enumerate() const;
    void enumerate_from(JobId job, std::vector<MachineId>& partial, std::vector<char>& used) const;
    bool assignable(JobId job, MachineId machine) const;
    bool is_legal(const Allocation& alloc) const;
    StepResult apply(const Allocation& alloc, std::size_t action);
    void advance();
    void settle();
    bool all_idle() const noexcept;

    const Instance* inst_;
    const AssignmentMask* mask_;
    EnvState state_;
    bool record_trace_ = true;

    mutable bool legal_valid_ = false;
    mutable std::vector<MachineId> legal_flat_;
    mutable std::size_t legal_count_ = 0;
};

}  // namespace fjsp
