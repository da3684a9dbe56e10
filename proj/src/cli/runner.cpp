#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fjsp/cli.hpp"

namespace fjsp::cli {

namespace {

const std::vector<std::pair<Solver, std::string>>& solver_names() {
    static const std::vector<std::pair<Solver, std::string>> names = {
        {Solver::Rl, "rl"},   {Solver::RlPlain, "rl-plain"}, {Solver::RlDivided, "rl-divided"},
        {Solver::Rs, "rs"},   {Solver::Fifo, "fifo"},        {Solver::Mwkr, "mwkr"},
        {Solver::Ga, "ga"},   {Solver::Oracle, "oracle"},
    };
    return names;
}

double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

Schedule run_divided(const Instance& inst, int parts, const RunSpec& spec, const LearnerConfig& cfg,
                     CellResult& cell) {
    const DivisionResult res = solve_divided(inst, spec.divide_strategy, parts, cfg, spec.estimate);
    cell.notes.insert(cell.notes.end(), res.log.begin(), res.log.end());
    return res.schedule;
}

Schedule solve(const Instance& inst, Solver solver, const RunSpec& spec, CellResult& cell) {
    LearnerConfig lc = spec.learner;
    lc.time_budget_seconds = spec.budget_seconds;
    BaselineConfig bc = spec.baseline;
    bc.time_budget_seconds = spec.budget_seconds;

    switch (solver) {
        case Solver::Rl:
            if (spec.divide_parts >= 2) return run_divided(inst, spec.divide_parts, spec, lc, cell);
            [[fallthrough]];
        case Solver::RlPlain: {
            if (solver == Solver::RlPlain) lc.prepopulate = false;
            const TrainingReport rep = train(inst, lc);
            if (rep.budget_exhausted)
                cell.notes.push_back("time budget reached after " + std::to_string(rep.episodes_run) + " episodes");
            cell.notes.push_back("best found in episode " + std::to_string(rep.best_episode));
            return rep.best_schedule;
        }
        case Solver::RlDivided:
            return run_divided(inst, spec.divide_parts >= 2 ? spec.divide_parts : 2, spec, lc, cell);
        case Solver::Rs:
            return random_sampling(inst, bc);
        case Solver::Fifo:
            return fifo(inst);
        case Solver::Mwkr:
            return mwkr(inst, spec.estimate);
        case Solver::Ga:
            return genetic(inst, bc);
        case Solver::Oracle: {
            const OracleResult res = exhaustive_oracle(inst, bc);
            cell.notes.push_back("oracle explored " + std::to_string(res.nodes) + " nodes");
            return res.schedule;
        }
    }
    throw std::logic_error("unhandled solver");
}

std::string size_of(const BenchRow& row) { return std::to_string(row.jobs) + "x" + std::to_string(row.machines); }

std::string render_text(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers,
                        const std::function<std::string(const CellResult&)>& cell) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head = {"instance", "size"};
    for (Solver s : solvers) head.push_back(to_string(s));
    grid.push_back(std::move(head));
    for (const auto& row : rows) {
        std::vector<std::string> line = {row.instance, size_of(row)};
        for (const auto& c : row.cells) line.push_back(c.ok() ? cell(c) : "NA");
        grid.push_back(std::move(line));
    }
    std::vector<std::size_t> width(grid.front().size(), 0);
    for (const auto& line : grid)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream out;
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) out << "  ";
            // Names left-aligned, numbers right-aligned.
            if (i < 2) {
                out << line[i];
                if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
            } else {
                out << std::string(width[i] - line[i].size(), ' ') << line[i];
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers,
                       const std::function<std::string(const CellResult&)>& cell) {
    std::ostringstream out;
    out << "instance,jobs,machines";
    for (Solver s : solvers) out << ',' << to_string(s);
    out << '\n';
    for (const auto& row : rows) {
        out << row.instance << ',' << row.jobs << ',' << row.machines;
        for (const auto& c : row.cells) out << ',' << (c.ok() ? cell(c) : "NA");
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string to_string(Solver s) {
    for (const auto& [solver, name] : solver_names())
        if (solver == s) return name;
    throw std::logic_error("unknown solver enum");
}

Solver parse_solver(const std::string& name) {
    for (const auto& [solver, n] : solver_names())
        if (n == name) return solver;
    throw std::invalid_argument("unknown solver '" + name + "'");
}

const std::vector<Solver>& all_solvers() {
    static const std::vector<Solver> all = [] {
        std::vector<Solver> v;
        for (const auto& entry : solver_names()) v.push_back(entry.first);
        return v;
    }();
    return all;
}

void RunSpec::validate() const {
    if (instances.empty()) throw std::invalid_argument("at least one --instance is required");
    if (solvers.empty()) throw std::invalid_argument("at least one --solver is required");
    if (divide_parts == 1 || divide_parts < 0) throw std::invalid_argument("--divide must be at least 2");
    if (budget_seconds < 0.0) throw std::invalid_argument("--budget-seconds must be non-negative");
    if (jobs < 1) throw std::invalid_argument("--jobs must be positive");
    learner.validate();
    baseline.validate();
}

CellResult run_cell(const Instance& inst, Solver solver, const RunSpec& spec) {
    CellResult cell;
    cell.instance = inst.name;
    cell.solver = solver;
    const double cpu0 = thread_cpu_seconds();
    const auto wall0 = std::chrono::steady_clock::now();
    try {
        Schedule sched = solve(inst, solver, spec, cell);
        sched.canonicalize();
        const ValidationReport report = validate_schedule(inst, sched);
        if (report.ok()) {
            cell.makespan = makespan(sched);
            cell.schedule = std::move(sched);
        } else {
            cell.error = "invalid schedule: " + report.summary();
        }
    } catch (const BudgetExceeded& e) {
        cell.error = std::string("budget exceeded: ") + e.what();
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    cell.cpu_seconds = thread_cpu_seconds() - cpu0;
    cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return cell;
}

std::vector<BenchRow> run_bench(const std::vector<Instance>& instances, const RunSpec& spec) {
    const std::size_t cols = spec.solvers.size();
    const std::size_t total = instances.size() * cols;
    std::vector<CellResult> results(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            results[i] = run_cell(instances[i / cols], spec.solvers[i % cols], spec);
    };
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), total);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    std::vector<BenchRow> rows;
    for (std::size_t r = 0; r < instances.size(); ++r) {
        BenchRow row;
        row.instance = instances[r].name;
        row.jobs = instances[r].job_count();
        row.machines = instances[r].machine_count;
        for (std::size_t c = 0; c < cols; ++c) row.cells.push_back(std::move(results[r * cols + c]));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string makespan_table_text(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers) {
    return render_text(rows, solvers, [](const CellResult& c) { return std::to_string(c.makespan); });
}

std::string makespan_table_csv(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers) {
    return render_csv(rows, solvers, [](const CellResult& c) { return std::to_string(c.makespan); });
}

std::string cpu_table_text(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers) {
    return render_text(rows, solvers, [](const CellResult& c) { return std::to_string(std::lround(c.cpu_seconds)); });
}

std::string cpu_table_csv(const std::vector<BenchRow>& rows, const std::vector<Solver>& solvers) {
    return render_csv(rows, solvers, [](const CellResult& c) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", c.cpu_seconds);
        return std::string(buf);
    });
}

}  // namespace fjsp::cli
