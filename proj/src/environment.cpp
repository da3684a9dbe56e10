#include "fjsp/environment.hpp"

#include <algorithm>

namespace fjsp {

Environment::Environment(const Instance& inst, const AssignmentMask* mask) : inst_(&inst), mask_(mask) {
    inst.validate(/*allow_empty_jobs=*/true);
    reset();
}

Observation Environment::reset() {
    const auto n = static_cast<std::size_t>(inst_->job_count());
    state_ = EnvState{};
    state_.job_op.assign(n, 0);
    state_.job_machine.assign(n, kIdle);
    state_.job_remaining.assign(n, 0);
    state_.job_ready.assign(n, 0);
    state_.machine_job.assign(static_cast<std::size_t>(inst_->machine_count), -1);
    state_.records.reserve(inst_->total_operations());
    legal_valid_ = false;
    settle();
    return observation();
}

Observation Environment::observation() const {
    const auto n = state_.job_op.size();
    std::vector<int> merged(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        merged[j] = state_.job_machine[j];
        merged[n + j] = state_.job_op[j];
    }
    return Observation(std::move(merged));
}

bool Environment::done() const noexcept {
    for (std::size_t j = 0; j < state_.job_op.size(); ++j)
        if (state_.job_op[j] < static_cast<int>(inst_->jobs[j].size())) return false;
    return true;
}

bool Environment::all_idle() const noexcept {
    return std::all_of(state_.machine_job.begin(), state_.machine_job.end(), [](JobId j) { return j < 0; });
}

bool Environment::assignable(JobId job, MachineId machine) const {
    if (!state_.machine_free(machine)) return false;
    const int op = state_.job_op[job];
    if (mask_ && !mask_->allows(state_, job, op, machine)) return false;
    return true;
}

bool Environment::has_assignable() const {
    for (JobId j = 0; j < inst_->job_count(); ++j) {
        if (state_.busy(j) || state_.job_op[j] >= static_cast<int>(inst_->jobs[j].size())) continue;
        for (const auto& alt : inst_->operation(j, state_.job_op[j]).alternatives())
            if (assignable(j, alt.machine)) return true;
    }
    return false;
}

void Environment::enumerate_from(JobId job, std::vector<MachineId>& partial, std::vector<char>& used) const {
    if (job == inst_->job_count()) {
        legal_flat_.insert(legal_flat_.end(), partial.begin(), partial.end());
        if (++legal_count_ > kMaxAllocations)
            throw std::length_error("legal allocation list exceeds " + std::to_string(kMaxAllocations));
        return;
    }
    const bool open = !state_.busy(job) && state_.job_op[job] < static_cast<int>(inst_->jobs[job].size());
    if (open) {
        for (const auto& alt : inst_->operation(job, state_.job_op[job]).alternatives()) {
            if (used[alt.machine] || !assignable(job, alt.machine)) continue;
            used[alt.machine] = 1;
            partial[job] = alt.machine;
            enumerate_from(job + 1, partial, used);
            used[alt.machine] = 0;
        }
    }
    partial[job] = kWait;
    enumerate_from(job + 1, partial, used);
}

void Environment::enumerate() const {
    if (legal_valid_) return;
    legal_flat_.clear();
    legal_count_ = 0;
    if (!done()) {
        std::vector<MachineId> partial(static_cast<std::size_t>(inst_->job_count()), kWait);
        std::vector<char> used(static_cast<std::size_t>(inst_->machine_count), 0);
        enumerate_from(0, partial, used);
        // The pure-wait vector comes last. It is only offered as an alternative
        // to a real assignment, and never when nothing is running.
        if (legal_count_ == 1 || all_idle()) {
            legal_flat_.resize(legal_flat_.size() - partial.size());
            --legal_count_;
        }
    }
    legal_valid_ = true;
}

std::size_t Environment::legal_count() const {
    enumerate();
    return legal_count_;
}

std::span<const MachineId> Environment::allocation(std::size_t index) const {
    enumerate();
    if (index >= legal_count_) throw std::out_of_range("action index " + std::to_string(index) + " out of range");
    const auto n = static_cast<std::size_t>(inst_->job_count());
    return {legal_flat_.data() + index * n, n};
}

std::vector<Allocation> Environment::legal_allocations() const {
    if (done()) throw std::logic_error("legal_allocations on a terminal state");
    enumerate();
    std::vector<Allocation> out;
    out.reserve(legal_count_);
    for (std::size_t i = 0; i < legal_count_; ++i) {
        auto a = allocation(i);
        out.emplace_back(a.begin(), a.end());
    }
    return out;
}

std::size_t Environment::index_of(const Allocation& alloc) const {
    enumerate();
    const auto n = static_cast<std::size_t>(inst_->job_count());
    if (alloc.size() != n) return npos;
    for (std::size_t i = 0; i < legal_count_; ++i)
        if (std::equal(alloc.begin(), alloc.end(), legal_flat_.begin() + static_cast<std::ptrdiff_t>(i * n)))
            return i;
    return npos;
}

bool Environment::is_legal(const Allocation& alloc) const {
    if (alloc.size() != static_cast<std::size_t>(inst_->job_count())) return false;
    std::vector<char> used(static_cast<std::size_t>(inst_->machine_count), 0);
    bool any = false;
    for (JobId j = 0; j < inst_->job_count(); ++j) {
        const MachineId m = alloc[j];
        if (m == kWait) continue;
        if (m < 0 || m >= inst_->machine_count || used[m]) return false;
        if (state_.busy(j) || state_.job_op[j] >= static_cast<int>(inst_->jobs[j].size())) return false;
        if (!inst_->operation(j, state_.job_op[j]).runs_on(m) || !assignable(j, m)) return false;
        used[m] = 1;
        any = true;
    }
    if (!any) return !all_idle() && has_assignable();
    return true;
}

StepResult Environment::step(std::size_t action) {
    if (done()) throw std::logic_error("step on a terminal state");
    auto span = allocation(action);
    return apply(Allocation(span.begin(), span.end()), action);
}

StepResult Environment::step_allocation(const Allocation& alloc) {
    if (done()) throw std::logic_error("step on a terminal state");
    if (!is_legal(alloc)) throw std::invalid_argument("allocation is not legal in the current state");
    return apply(alloc, legal_valid_ ? index_of(alloc) : npos);
}

StepResult Environment::apply(const Allocation& alloc, std::size_t action) {
    const int before = state_.clock;
    if (record_trace_) state_.trace.push_back({observation(), action, alloc, before});

    bool pure_wait = true;
    for (JobId j = 0; j < inst_->job_count(); ++j) {
        const MachineId m = alloc[j];
        if (m == kWait) continue;
        pure_wait = false;
        const int op = state_.job_op[j];
        const Duration d = *inst_->operation(j, op).duration_on(m);
        state_.job_machine[j] = m;
        state_.job_remaining[j] = d;
        state_.machine_job[m] = j;
        state_.records.push_back({j, op, m, before, before + d});
    }
    if (pure_wait) advance();
    settle();
    legal_valid_ = false;

    StepResult result;
    result.observation = observation();
    result.reward = before - state_.clock;
    result.done = done();
    result.clock = state_.clock;
    return result;
}

void Environment::advance() {
    int dt = std::numeric_limits<int>::max();
    for (JobId j = 0; j < inst_->job_count(); ++j)
        if (state_.busy(j)) dt = std::min(dt, state_.job_remaining[j]);
    if (dt == std::numeric_limits<int>::max()) throw InfeasibleState("no running operation to wait for");
    state_.clock += dt;
    for (JobId j = 0; j < inst_->job_count(); ++j) {
        if (!state_.busy(j)) continue;
        state_.job_remaining[j] -= dt;
        if (state_.job_remaining[j] == 0) {
            state_.machine_job[state_.job_machine[j]] = -1;
            state_.job_machine[j] = kIdle;
            state_.job_op[j] += 1;
            state_.job_ready[j] = state_.clock;
        }
    }
}

void Environment::settle() {
    while (!done() && !has_assignable()) {
        if (all_idle()) throw InfeasibleState("no job can be assigned and no machine is running");
        advance();
    }
    legal_valid_ = false;
}

Schedule Environment::extract_schedule() const {
    if (!done()) throw std::logic_error("extract_schedule on a non-terminal state");
    Schedule sched{state_.records};
    sched.canonicalize();
    return sched;
}

}  // namespace fjsp
