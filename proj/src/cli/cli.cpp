#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "fjsp/cli.hpp"

namespace fjsp::cli {

namespace {

struct Options {
    std::vector<std::string> instances;
    std::vector<std::string> solvers;
    std::uint64_t seed = 0;
    int episodes = LearnerConfig{}.episodes;
    double alpha = LearnerConfig{}.alpha;
    double gamma = LearnerConfig{}.gamma;
    double epsilon_start = LearnerConfig{}.epsilon_start;
    double epsilon_min = LearnerConfig{}.epsilon_min;
    double epsilon_decay = LearnerConfig{}.epsilon_decay;
    int test_interval = LearnerConfig{}.test_interval;
    bool prepopulate = true;
    bool include_immediate = false;
    int divide = 0;
    std::string divide_strategy = "ops";
    std::string estimate = "mean";
    double budget = 0.0;
    int population = BaselineConfig{}.population;
    int generations = BaselineConfig{}.generations;
    std::size_t oracle_nodes = BaselineConfig{}.node_budget;
    bool gantt = false;
    std::string out = ".";
    int jobs = 1;
    std::string config;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_run_options(CLI::App* app, Options& o) {
    app->add_option("--instance", o.instances, "Instance file (repeatable)");
    app->add_option("--solver", o.solvers, "rl, rl-plain, rl-divided, rs, fifo, mwkr, ga, oracle")->delimiter(',');
    app->add_option("--seed", o.seed, "RNG seed shared by all solvers");
    app->add_option("--episodes", o.episodes, "Training episodes (also random-sampling rollouts)");
    app->add_option("--alpha", o.alpha);
    app->add_option("--gamma", o.gamma);
    app->add_option("--epsilon-start", o.epsilon_start);
    app->add_option("--epsilon-min", o.epsilon_min);
    app->add_option("--epsilon-decay", o.epsilon_decay, "Multiplicative decay per episode");
    app->add_option("--test-interval", o.test_interval, "Episodes between greedy tests");
    app->add_flag("--prepopulate,!--no-prepopulate", o.prepopulate, "Backward pass after each episode (rl)");
    app->add_flag("--include-immediate-reward", o.include_immediate,
                  "Backward pass stores returns including the step's own reward");
    app->add_option("--divide", o.divide, "Solve rl by instance division into this many parts");
    app->add_option("--divide-strategy", o.divide_strategy, "ops | duration");
    app->add_option("--duration-estimate", o.estimate, "mean | min | max, for duration splits and MWKR");
    app->add_option("--budget-seconds", o.budget, "Wall-clock budget per solver run, 0 for none");
    app->add_option("--population", o.population, "GA population size");
    app->add_option("--generations", o.generations, "GA generation limit");
    app->add_option("--oracle-nodes", o.oracle_nodes, "Oracle search node budget");
    app->add_flag("--gantt", o.gantt, "Also write SVG Gantt charts");
    app->add_option("--out", o.out, "Output directory");
    app->add_option("--jobs", o.jobs, "Solver runs in parallel");
    app->add_option("--config", o.config, "key=value defaults; command-line flags win");
}

// Values from the config file fill in options not given on the command line.
void apply_config(CLI::App* app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::Error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        const std::string key = item.fullname();
        if (key == "config") throw UsageError("config file cannot include another config file");
        CLI::Option* opt = nullptr;
        try {
            opt = app->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw UsageError("config file '" + path + "': unknown key '" + key + "'");
        }
        if (opt->count() > 0) continue;
        try {
            for (const auto& v : item.inputs) opt->add_result(v);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config file '" + path + "', key '" + key + "': " + e.what());
        }
    }
}

RunSpec make_spec(const Options& o, std::vector<Solver> default_solvers) {
    RunSpec spec;
    for (const auto& p : o.instances) spec.instances.emplace_back(p);
    try {
        for (const auto& s : o.solvers) spec.solvers.push_back(parse_solver(s));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (spec.solvers.empty()) spec.solvers = std::move(default_solvers);
    std::set<Solver> seen;
    for (Solver s : spec.solvers)
        if (!seen.insert(s).second) throw UsageError("solver '" + to_string(s) + "' listed twice");

    spec.learner.seed = o.seed;
    spec.learner.episodes = o.episodes;
    spec.learner.alpha = o.alpha;
    spec.learner.gamma = o.gamma;
    spec.learner.epsilon_start = o.epsilon_start;
    spec.learner.epsilon_min = o.epsilon_min;
    spec.learner.epsilon_decay = o.epsilon_decay;
    spec.learner.test_interval = o.test_interval;
    spec.learner.prepopulate = o.prepopulate;
    spec.learner.include_immediate_reward = o.include_immediate;

    spec.baseline.seed = o.seed;
    spec.baseline.episodes = o.episodes;
    spec.baseline.population = o.population;
    spec.baseline.generations = o.generations;
    spec.baseline.node_budget = o.oracle_nodes;

    spec.divide_parts = o.divide;
    if (o.divide_strategy == "ops") spec.divide_strategy = SplitStrategy::ByOpCount;
    else if (o.divide_strategy == "duration") spec.divide_strategy = SplitStrategy::ByMeanDuration;
    else throw UsageError("--divide-strategy must be ops or duration");
    if (o.estimate == "mean") spec.estimate = DurationEstimate::Mean;
    else if (o.estimate == "min") spec.estimate = DurationEstimate::Min;
    else if (o.estimate == "max") spec.estimate = DurationEstimate::Max;
    else throw UsageError("--duration-estimate must be mean, min or max");
    spec.baseline.remaining_work = spec.estimate;

    spec.budget_seconds = o.budget;
    spec.out_dir = o.out;
    spec.gantt = o.gantt;
    spec.jobs = o.jobs;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return spec;
}

std::vector<Instance> load_all(const RunSpec& spec) {
    std::vector<Instance> out;
    std::set<std::string> names;
    for (const auto& path : spec.instances) {
        try {
            out.push_back(load_instance(path));
        } catch (const std::exception& e) {
            throw UsageError(path.string() + ": " + e.what());
        }
        if (!names.insert(out.back().name).second)
            throw UsageError("two instances are named '" + out.back().name + "'");
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string config_summary(const RunSpec& spec) {
    std::ostringstream s;
    const auto& l = spec.learner;
    s << "seed=" << l.seed << " episodes=" << l.episodes << " alpha=" << l.alpha << " gamma=" << l.gamma
      << " epsilon=" << l.epsilon_start << ".." << l.epsilon_min << " decay=" << l.epsilon_decay
      << " test_interval=" << l.test_interval << " prepopulate=" << l.prepopulate
      << " include_immediate_reward=" << l.include_immediate_reward << " divide=" << spec.divide_parts
      << " divide_strategy=" << (spec.divide_strategy == SplitStrategy::ByOpCount ? "ops" : "duration")
      << " population=" << spec.baseline.population << " generations=" << spec.baseline.generations
      << " oracle_nodes=" << spec.baseline.node_budget << " budget_seconds=" << spec.budget_seconds;
    return s.str();
}

void write_artifacts(const std::filesystem::path& dir, const Instance& inst, const CellResult& cell, bool gantt) {
    const std::string stem = inst.name + "." + to_string(cell.solver);
    write_file(dir / (stem + ".sched"), write_schedule(*cell.schedule));
    if (gantt) write_file(dir / (stem + ".svg"), render_gantt_svg(*cell.schedule, inst.machine_count));
}

void log_cells(std::ostream& log, const RunSpec& spec, const std::vector<BenchRow>& rows) {
    log << "config " << config_summary(spec) << '\n';
    for (const auto& row : rows) {
        for (const auto& c : row.cells) {
            log << row.instance << ' ' << to_string(c.solver) << ' ';
            if (c.ok()) log << "makespan=" << c.makespan;
            else log << "failed: " << c.error;
            log << " wall=" << c.wall_seconds << "s cpu=" << c.cpu_seconds << "s\n";
            for (const auto& n : c.notes) log << "  " << n << '\n';
        }
    }
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSpec spec = make_spec(o, {Solver::Rl});
    const auto instances = load_all(spec);
    std::filesystem::create_directories(spec.out_dir);
    const auto rows = run_bench(instances, spec);

    int status = kOk;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& c : rows[r].cells) {
            if (c.ok()) {
                write_artifacts(spec.out_dir, instances[r], c, spec.gantt);
                out << rows[r].instance << ' ' << to_string(c.solver) << " makespan " << c.makespan << '\n';
            } else {
                err << rows[r].instance << ' ' << to_string(c.solver) << ": " << c.error << '\n';
                status = kFailure;
            }
        }
    }
    std::ofstream log(spec.out_dir / "solve.log");
    log_cells(log, spec, rows);
    return status;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    const RunSpec spec = make_spec(o, all_solvers());
    const auto instances = load_all(spec);
    const auto sched_dir = spec.out_dir / "schedules";
    std::filesystem::create_directories(sched_dir);
    const auto rows = run_bench(instances, spec);

    int status = kOk;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& c : rows[r].cells) {
            if (c.ok()) {
                write_artifacts(sched_dir, instances[r], c, spec.gantt);
            } else {
                err << rows[r].instance << ' ' << to_string(c.solver) << ": NA (" << c.error << ")\n";
                if (c.error.rfind("invalid schedule", 0) == 0) status = kFailure;
            }
        }
    }
    write_file(spec.out_dir / "makespan.txt", makespan_table_text(rows, spec.solvers));
    write_file(spec.out_dir / "makespan.csv", makespan_table_csv(rows, spec.solvers));
    write_file(spec.out_dir / "cpu_time.txt", cpu_table_text(rows, spec.solvers));
    write_file(spec.out_dir / "cpu_time.csv", cpu_table_csv(rows, spec.solvers));
    std::ofstream log(spec.out_dir / "bench.log");
    log_cells(log, spec, rows);
    out << makespan_table_text(rows, spec.solvers);
    return status;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path, std::ostream& out,
                 std::ostream& err) {
    Instance inst;
    try {
        inst = load_instance(instance_path);
    } catch (const std::exception& e) {
        throw UsageError(instance_path + ": " + e.what());
    }
    std::ifstream in(schedule_path, std::ios::binary);
    if (!in) throw UsageError("cannot read schedule file '" + schedule_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Schedule sched;
    try {
        sched = parse_schedule(buf.str());
    } catch (const std::exception& e) {
        err << schedule_path << ": " << e.what() << '\n';
        return kFailure;
    }
    const ValidationReport report = validate_schedule(inst, sched);
    if (report.ok()) {
        out << "ok makespan " << makespan(sched) << '\n';
        return kOk;
    }
    out << report.summary();
    if (!report.summary().empty() && report.summary().back() != '\n') out << '\n';
    return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flexible job-shop scheduling with tabular Q-learning and baselines", "fjsp"};
    app.require_subcommand(1);

    Options solve_opts;
    Options bench_opts;
    auto* solve = app.add_subcommand("solve", "Solve instances and write schedule files");
    add_run_options(solve, solve_opts);
    auto* bench = app.add_subcommand("bench", "Run solvers over instances and write comparison tables");
    add_run_options(bench, bench_opts);

    std::string v_instance;
    std::string v_schedule;
    auto* validate = app.add_subcommand("validate", "Check a schedule file against an instance");
    validate->add_option("--instance", v_instance)->required();
    validate->add_option("--schedule", v_schedule)->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*solve) {
            if (!solve_opts.config.empty()) apply_config(solve, solve_opts.config);
            return cmd_solve(solve_opts, out, err);
        }
        if (*bench) {
            if (!bench_opts.config.empty()) apply_config(bench, bench_opts.config);
            return cmd_bench(bench_opts, out, err);
        }
        return cmd_validate(v_instance, v_schedule, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace fjsp::cli
