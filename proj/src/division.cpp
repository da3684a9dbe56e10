#include "fjsp/division.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fjsp {

SplitResult split(const Instance& inst, SplitStrategy strategy, int parts, DurationEstimate estimate) {
    inst.validate(/*allow_empty_jobs=*/true);
    if (parts < 2 || static_cast<std::size_t>(parts) > inst.max_operations())
        throw std::invalid_argument("parts must be in [2, " + std::to_string(inst.max_operations()) + "], got " +
                                    std::to_string(parts));

    const auto weight = mean_durations(inst, estimate);

    SplitResult out;
    out.plan.strategy = strategy;
    out.plan.parts = parts;
    out.plan.original = inst;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const int n = static_cast<int>(inst.jobs[j].size());
        std::vector<int> cuts(static_cast<std::size_t>(parts) + 1, n);
        cuts[0] = 0;
        if (strategy == SplitStrategy::ByOpCount) {
            for (int k = 1; k < parts; ++k) cuts[k] = cuts[k - 1] + n / parts + (k - 1 < n % parts ? 1 : 0);
        } else {
            // cuts[k] = first op whose expected start is at or past k/parts of the job.
            const auto& w = weight[j];
            double total = 0.0;
            for (double x : w) total += x;
            double start = 0.0;
            int k = 1;
            for (int o = 0; o < n; ++o) {
                while (k < parts && start * parts >= k * total) cuts[k++] = o;
                start += w[o];
            }
        }
        out.plan.cuts.push_back(std::move(cuts));
    }

    for (int k = 0; k < parts; ++k) {
        Instance sub;
        sub.name = inst.name + "_part" + std::to_string(k + 1);
        sub.machine_count = inst.machine_count;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
            const auto& ops = inst.jobs[j].operations;
            const auto& c = out.plan.cuts[j];
            sub.jobs.push_back({{ops.begin() + c[k], ops.begin() + c[k + 1]}});
        }
        out.instances.push_back(std::move(sub));
    }
    return out;
}

Instance combine(const SplitPlan& plan, int k) {
    if (k < 1 || k > plan.parts)
        throw std::invalid_argument("combine: k must be in [1, " + std::to_string(plan.parts) + "], got " +
                                    std::to_string(k));
    Instance out;
    out.name = k == plan.parts ? plan.original.name : plan.original.name + "_upto" + std::to_string(k);
    out.machine_count = plan.original.machine_count;
    for (std::size_t j = 0; j < plan.original.jobs.size(); ++j) {
        const auto& ops = plan.original.jobs[j].operations;
        out.jobs.push_back({{ops.begin(), ops.begin() + plan.cuts[j][k]}});
    }
    return out;
}

PolicyConstraint PolicyConstraint::from_schedule(const Schedule& sched, int machine_count) {
    PolicyConstraint pc;
    pc.order_.resize(static_cast<std::size_t>(machine_count));
    auto entries = sched.entries;
    std::stable_sort(entries.begin(), entries.end(), [](const ScheduleEntry& a, const ScheduleEntry& b) {
        return a.start != b.start ? a.start < b.start : a.job < b.job;
    });
    for (const auto& e : entries) {
        if (e.machine < 0 || e.machine >= machine_count) throw std::invalid_argument("constraint machine out of range");
        if (!pc.machine_of_.emplace(std::pair{e.job, e.op}, e.machine).second)
            throw std::invalid_argument("operation appears twice in constraint schedule");
        auto& order = pc.order_[static_cast<std::size_t>(e.machine)];
        pc.rank_[{e.job, e.op}] = order.size();
        order.emplace_back(e.job, e.op);
    }
    return pc;
}

bool PolicyConstraint::allows(const EnvState& state, JobId job, int op, MachineId machine) const {
    const auto it = machine_of_.find({job, op});
    if (it == machine_of_.end()) return true;
    if (it->second != machine) return false;
    // Everything fixed ahead of it on this machine must have started already.
    const auto& order = order_[static_cast<std::size_t>(machine)];
    const std::size_t rank = rank_.at({job, op});
    for (std::size_t i = 0; i < rank; ++i) {
        const auto [j, o] = order[i];
        const bool started = state.job_op[j] > o || (state.job_op[j] == o && state.busy(j));
        if (!started) return false;
    }
    return true;
}

namespace {

StagePolicy run_stage(const Instance& inst, const AssignmentMask* mask, const LearnerConfig& cfg) {
    StagePolicy out;
    QTable q;
    out.report = train(inst, cfg, q, mask);
    out.schedule = out.report.best_schedule;
    out.makespan = out.report.best_makespan;

    Environment env(inst, mask);
    env.set_record_trace(false);
    for (std::size_t a : out.report.best_actions) {
        const auto alloc = env.allocation(a);
        out.allocations.emplace_back(alloc.begin(), alloc.end());
        env.step(a);
    }
    out.constraint = PolicyConstraint::from_schedule(out.schedule, inst.machine_count);
    return out;
}

}  // namespace

StagePolicy get_best_policy(const Instance& inst, const PolicyConstraint& prev, const LearnerConfig& cfg) {
    if (prev.empty()) return run_stage(inst, nullptr, cfg);
    try {
        return run_stage(inst, &prev, cfg);
    } catch (const InfeasibleState&) {
        StagePolicy out = run_stage(inst, nullptr, cfg);
        out.fell_back = true;
        return out;
    }
}

DivisionResult solve_divided(const Instance& inst, SplitStrategy strategy, int parts, const LearnerConfig& cfg,
                             DurationEstimate estimate) {
    DivisionResult out;
    if (parts == 1) {
        out.plan.strategy = strategy;
        out.plan.parts = 1;
        out.plan.original = inst;
        for (const auto& job : inst.jobs) out.plan.cuts.push_back({0, static_cast<int>(job.size())});
        out.stages.push_back(get_best_policy(inst, {}, cfg));
    } else {
        out.plan = split(inst, strategy, parts, estimate).plan;
        PolicyConstraint policy;
        Instance previous;
        for (int k = 1; k <= parts; ++k) {
            Instance combined = combine(out.plan, k);
            if (combined.total_operations() == 0 || (k > 1 && combined == previous)) {
                out.log.push_back("stage " + std::to_string(k) + ": nothing new, skipped");
                continue;
            }
            StagePolicy stage = get_best_policy(combined, policy, cfg);
            out.log.push_back("stage " + std::to_string(k) + ": " + std::to_string(combined.total_operations()) +
                              " operations, makespan " + std::to_string(stage.makespan) +
                              (stage.fell_back ? " (constraint infeasible, solved unconstrained)" : ""));
            policy = stage.constraint;
            previous = std::move(combined);
            out.stages.push_back(std::move(stage));
        }
    }
    out.schedule = out.stages.back().schedule;
    out.schedule.canonicalize();
    out.makespan = makespan(out.schedule);
    const auto report = validate_schedule(inst, out.schedule);
    if (!report.ok()) throw std::logic_error("divided solve produced an invalid schedule: " + report.summary());
    return out;
}

}  // namespace fjsp
