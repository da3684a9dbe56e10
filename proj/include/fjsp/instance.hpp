#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fjsp {

using JobId = int;
using MachineId = int;
using Duration = int;

/// One (machine, processing time) choice for an operation.
struct Alternative {
    MachineId machine = 0;
    Duration duration = 0;

    friend bool operator==(const Alternative&, const Alternative&) = default;
};

/// An operation and the machines able to run it. Alternatives are kept
/// sorted by machine id; ids are unique.
class OperationSpec {
public:
    OperationSpec() = default;
    explicit OperationSpec(std::vector<Alternative> alternatives);

    const std::vector<Alternative>& alternatives() const noexcept { return alternatives_; }

    /// Processing time on `machine`, or nullopt if the machine cannot run it.
    std::optional<Duration> duration_on(MachineId machine) const noexcept;
    bool runs_on(MachineId machine) const noexcept { return duration_on(machine).has_value(); }

    Duration min_duration() const noexcept;
    Duration max_duration() const noexcept;
    double mean_duration() const noexcept;

    friend bool operator==(const OperationSpec&, const OperationSpec&) = default;

private:
    std::vector<Alternative> alternatives_;
};

/// A job is a chain of operations processed in order.
struct JobSpec {
    std::vector<OperationSpec> operations;

    std::size_t size() const noexcept { return operations.size(); }
    friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// A flexible job-shop instance. Machine ids are 0-based internally.
///
/// Zero-operation jobs are only produced by instance division, where they
/// keep job indices stable across sub-instances; the file parser rejects them.
struct Instance {
    std::string name;
    int machine_count = 0;
    std::vector<JobSpec> jobs;

    int job_count() const noexcept { return static_cast<int>(jobs.size()); }
    std::size_t total_operations() const noexcept;
    std::size_t max_operations() const noexcept;

    const OperationSpec& operation(JobId job, int op) const { return jobs.at(job).operations.at(op); }

    /// Throws std::invalid_argument when a structural invariant is broken.
    void validate(bool allow_empty_jobs = false) const;

    /// Structural equality; the name label is not part of the file format
    /// and is ignored.
    friend bool operator==(const Instance& a, const Instance& b) {
        return a.machine_count == b.machine_count && a.jobs == b.jobs;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parses the standard flexible job-shop text format:
///
///     <jobs> <machines> [<avg machines per operation>]
///     <#ops> { <#alts> { <machine> <duration> }^#alts }^#ops      (one line per job)
///
/// Machine ids in the file are 1-based.
Instance parse_instance(std::string_view text, std::string name = {});

/// Reads and parses an instance file; the name defaults to the file stem.
Instance load_instance(const std::filesystem::path& path);

/// Inverse of parse_instance (1-based machine ids, two-integer header).
std::string write_instance(const Instance& inst);

enum class DurationEstimate { Mean, Min, Max };

/// Per-job, per-operation expected duration over the alternatives.
std::vector<std::vector<double>> mean_durations(const Instance& inst,
                                                DurationEstimate estimate = DurationEstimate::Mean);

}  // namespace fjsp
