#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fjsp/baselines.hpp"
#include "fjsp/division.hpp"
#include "fjsp/instance.hpp"
#include "fjsp/qlearning.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp::cli {

enum class Solver { Rl, RlPlain, RlDivided, Rs, Fifo, Mwkr, Ga, Oracle };

std::string to_string(Solver s);
/// Throws std::invalid_argument on an unknown name.
Solver parse_solver(const std::string& name);
const std::vector<Solver>& all_solvers();

struct RunSpec {
    std::vector<std::filesystem::path> instances;
    std::vector<Solver> solvers;
    LearnerConfig learner;
    BaselineConfig baseline;
    int divide_parts = 0;  // 0: rl is undivided; rl-divided then uses 2
    SplitStrategy divide_strategy = SplitStrategy::ByOpCount;
    DurationEstimate estimate = DurationEstimate::Mean;
    double budget_seconds = 0.0;  // per cell, 0 for none
    std::filesystem::path out_dir = ".";
    bool gantt = false;
    int jobs = 1;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct CellResult {
    std::string instance;
    Solver solver = Solver::Rl;
    std::optional<Schedule> schedule;  // set only when solved and valid
    int makespan = 0;
    double cpu_seconds = 0.0;
    double wall_seconds = 0.0;
    std::string error;  // empty on success
    std::vector<std::string> notes;

    bool ok() const noexcept { return schedule.has_value(); }
};

/// Runs one solver; never throws for solver failures, they land in `error`.
CellResult run_cell(const Instance& inst, Solver solver, const RunSpec& spec);

struct BenchRow {
    std::string instance;
    int jobs = 0;
    int machines = 0;
    std::vector<CellResult> cells;  // in spec.solvers order
};

/// Every (instance, solver) cell, up to spec.jobs at a time. Row and column
/// order follow the RunSpec regardless of completion order.
std::vector<BenchRow> run_bench(const std::vector<Instance>& instances, const RunSpec& spec);

std::string makespan_table_text(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers);
std::string makespan_table_csv(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers);
/// Whole seconds in the text table, full precision in the CSV.
std::string cpu_table_text(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers);
std::string cpu_table_csv(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers);

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fjsp::cli
