#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fjsp/instance.hpp"

namespace fjsp {

struct ScheduleEntry {
    JobId job = 0;
    int op = 0;
    MachineId machine = 0;
    int start = 0;
    int end = 0;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct Schedule {
    std::vector<ScheduleEntry> entries;

    /// Sorts entries by (job, op, start) so that equal schedules print identically.
    void canonicalize();

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Completion time of the last entry. Throws std::invalid_argument on an
/// empty schedule.
int makespan(const Schedule& sched);

enum class ViolationKind {
    JobOverlap,        // two operations of one job processed at the same time
    MachineOverlap,    // a machine processing two operations at once
    Interruption,      // an operation split into several pieces
    Precedence,        // operations of a job started out of chain order
    Incomplete,        // an operation of the instance never scheduled
    Capability,        // machine cannot run the operation
    DurationMismatch,  // processed time differs from the alternative's duration
    InvalidEntry,      // unknown job/op, or end <= start
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationKind kind) const noexcept;
    std::string summary() const;
};

/// Checks a schedule against the job-shop constraints. Machine idleness is
/// always permitted. Job overlap and out-of-order starts are reported as
/// separate classes; together they are equivalent to "op j ends before
/// op j+1 starts".
ValidationReport validate_schedule(const Instance& inst, const Schedule& sched);

/// `job op machine start end` per line (0-based ids), then `makespan <value>`.
std::string write_schedule(const Schedule& sched);
Schedule parse_schedule(std::string_view text);

/// Self-describing JSON export.
std::string schedule_to_json(const Schedule& sched, const Instance& inst);

/// One text lane per machine, blocks in start order.
std::string render_gantt_text(const Schedule& sched, int machine_count);

/// Dependency-free SVG chart, one lane per machine.
std::string render_gantt_svg(const Schedule& sched, int machine_count);

}  // namespace fjsp
