// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "fjsp/baselines.hpp"
#include "fjsp/cli.hpp"
#include "fjsp/division.hpp"
#include "fjsp/qlearning.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace fjsp;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr int kC1Instances = 50;
constexpr double kC1MatchRate = 0.90;
constexpr int kC1Episodes = 2000;
constexpr double kC1Seconds = 120.0;
constexpr double kC2Seconds = 60.0;
constexpr int kC3Limit = 605;
constexpr double kC3Seconds = 600.0;
constexpr double kC4Ratio = 1.0 / 3.0;
constexpr int kC4Seeds = 5;
constexpr double kC5Slack = 0.15;
constexpr int kC6Episodes = 1000;
constexpr int kC7States = 10000;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    int matched = 0, rl_beats = 0, baseline_beats = 0;
    for (int i = 0; i < kC1Instances; ++i) {
        const Instance inst = testing::random_instance(rng);
        const int opt = exhaustive_oracle(inst, {}).makespan;
        LearnerConfig cfg;
        cfg.episodes = kC1Episodes;
        cfg.seed = static_cast<std::uint64_t>(i);
        const int rl = train(inst, cfg).best_makespan;
        matched += rl == opt;
        rl_beats += rl < opt;
        BaselineConfig bc;
        bc.seed = static_cast<std::uint64_t>(i);
        for (const Schedule& s : {fifo(inst), mwkr(inst), genetic(inst, bc), random_sampling(inst, bc)})
            baseline_beats += makespan(s) < opt;
    }
    const double secs = seconds_since(t0);
    const bool pass = matched >= kC1MatchRate * kC1Instances && rl_beats == 0 && baseline_beats == 0 &&
                      secs < kC1Seconds;
    return {pass, fmt("RL matched the oracle on %d/%d (need >= %.0f%%), RL below oracle %d, baselines below "
                      "oracle %d, %.1f s (limit %.0f s)",
                      matched, kC1Instances, kC1MatchRate * 100, rl_beats, baseline_beats, secs, kC1Seconds)};
}

Outcome benchmark_makespans() {
    std::string detail;
    bool pass = true;
    for (const auto& [inst, expected] : {std::pair{testing::toy(), 53}, std::pair{testing::ft06(), 55}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const TrainingReport r = train(inst, LearnerConfig{});
        const double secs = seconds_since(t0);
        const bool valid = validate_schedule(inst, r.best_schedule).ok();
        pass = pass && r.best_makespan == expected && valid && secs < kC2Seconds;
        detail += fmt("%s %d (pinned %d, %.1f s)%s; ", inst.name.c_str(), r.best_makespan, expected, secs,
                      valid ? "" : " INVALID");
    }
    // The pinned values are confirmed independently: the oracle proves them optimal.
    BaselineConfig bc;
    bc.node_budget = 20'000'000;
    const int toy_opt = exhaustive_oracle(testing::toy(), bc).makespan;
    const int ft_opt = exhaustive_oracle(testing::ft06(), bc).makespan;
    pass = pass && toy_opt == 53 && ft_opt == 55;
    detail += fmt("oracle optima %d / %d", toy_opt, ft_opt);
    return {pass, detail};
}

Outcome literature_la05() {
    const Instance inst = testing::la05();
    LearnerConfig cfg;
    cfg.time_budget_seconds = kC3Seconds;
    const auto t0 = std::chrono::steady_clock::now();
    const TrainingReport r = train(inst, cfg);
    const double secs = seconds_since(t0);
    const bool valid = validate_schedule(inst, r.best_schedule).ok();
    const bool dispatch_ok =
        validate_schedule(inst, fifo(inst)).ok() && validate_schedule(inst, mwkr(inst)).ok();
    bool golden_ok = true;
    std::string golden_note;
    if (r.best_makespan == 593) {
        const fs::path golden = fs::path(FJSP_GOLDEN_DIR) / "la05_rl_seed0.sched";
        golden_ok = fs::exists(golden) && slurp(golden) == write_schedule(r.best_schedule);
        golden_note = golden_ok ? ", matches golden schedule" : ", DIFFERS from golden schedule " + golden.string();
    }
    const bool pass = valid && r.best_makespan <= kC3Limit && secs < kC3Seconds && dispatch_ok && golden_ok;
    return {pass, fmt("RL makespan %d (limit %d, reference 593) in %.1f s, %d episodes; FIFO/MWKR valid: %s%s",
                      r.best_makespan, kC3Limit, secs, r.episodes_run, dispatch_ok ? "yes" : "no",
                      golden_note.c_str())};
}

Outcome heuristic_speedup() {
    const Instance inst = testing::ft06();
    std::vector<double> pre_s, pre_e, plain_s, plain_e;
    std::string per_seed;
    for (int seed = 0; seed < kC4Seeds; ++seed) {
        LearnerConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.include_immediate_reward = true;
        const TrainingReport pre = train(inst, cfg);
        cfg.prepopulate = false;
        const TrainingReport plain = train(inst, cfg);
        pre_s.push_back(pre.convergence_seconds);
        pre_e.push_back(pre.episodes_to_best);
        plain_s.push_back(plain.convergence_seconds);
        plain_e.push_back(plain.episodes_to_best);
        per_seed += fmt(" [seed %d: %d@%d%s vs %d@%d%s]", seed, pre.best_makespan, pre.episodes_to_best,
                        pre.reached_in_test ? "" : "*", plain.best_makespan, plain.episodes_to_best,
                        plain.reached_in_test ? "" : "*");
    }
    const double rs = median(pre_s) / median(plain_s);
    const double re = median(pre_e) / median(plain_e);
    return {rs <= kC4Ratio && re <= kC4Ratio,
            fmt("median time %.2f s vs %.2f s (ratio %.3f), median episodes %.0f vs %.0f (ratio %.3f), limit %.3f;",
                median(pre_s), median(plain_s), rs, median(pre_e), median(plain_e), re, kC4Ratio) +
                per_seed + " (* = greedy test never reached the run's best, censored at run end)"};
}

Outcome division_viability() {
    const Instance inst = testing::ft06();
    const LearnerConfig cfg;
    const int undivided = train(inst, cfg).best_makespan;
    bool pass = true;
    std::string detail = fmt("undivided %d;", undivided);
    for (auto [strategy, name] : {std::pair{SplitStrategy::ByOpCount, "ops"},
                                  std::pair{SplitStrategy::ByMeanDuration, "duration"}}) {
        const DivisionResult d = solve_divided(inst, strategy, 2, cfg);
        const bool valid = validate_schedule(inst, d.schedule).ok();
        std::map<std::pair<JobId, int>, MachineId> final_machine;
        for (const auto& e : d.schedule.entries) final_machine[{e.job, e.op}] = e.machine;
        int kept = 0, moved = 0;
        for (const auto& e : d.stages.front().schedule.entries)
            (final_machine.at({e.job, e.op}) == e.machine ? kept : moved)++;
        const bool fell_back = d.stages.back().fell_back;
        const bool within = d.makespan <= (1.0 + kC5Slack) * undivided;
        pass = pass && valid && within && moved == 0 && !fell_back;
        detail += fmt(" %s: %d (limit %.2f), segment-1 machines kept %d/%d%s%s;", name, d.makespan,
                      (1.0 + kC5Slack) * undivided, kept, kept + moved, valid ? "" : " INVALID",
                      fell_back ? " FELL BACK" : "");
    }
    return {pass, detail};
}

Outcome reward_identity() {
    std::mt19937_64 rng(6);
    int bad = 0;
    for (int e = 0; e < kC6Episodes; ++e) {
        const Instance inst = testing::random_instance(rng, {1, 6, 1, 5, 5, 20});
        Environment env(inst);
        long total = 0;
        while (!env.done()) total += env.step(std::uniform_int_distribution<std::size_t>(0, env.legal_count() - 1)(rng)).reward;
        bad += total != -makespan(env.extract_schedule());
    }
    return {bad == 0, fmt("%d/%d episodes with cumulative reward != -makespan", bad, kC6Episodes)};
}

Outcome legal_allocations() {
    std::mt19937_64 rng(7);
    int states = 0, mismatches = 0;
    while (states < kC7States) {
        const Instance inst = testing::random_instance(rng, {3, 3, 3, 3, 3, 10});
        Environment env(inst);
        while (!env.done() && states < kC7States) {
            mismatches += env.legal_allocations() != testing::brute_force_legal(inst, env.state());
            ++states;
            env.step(std::uniform_int_distribution<std::size_t>(0, env.legal_count() - 1)(rng));
        }
    }
    return {mismatches == 0, fmt("%d/%d sampled states differ from the brute-force filter", mismatches, states)};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / ("fjsp-acceptance-" + std::to_string(std::random_device{}()));
    std::vector<std::string> outputs;
    std::vector<fs::path> dirs;
    for (const char* tag : {"a", "b"}) {
        dirs.push_back(root / tag);
        std::ostringstream out, err;
        const int code = cli::run({"bench", "--instance", testing::data_file("toy.fjs").string(), "--instance",
                                   testing::data_file("ft06.fjs").string(), "--instance",
                                   testing::data_file("la05.fjs").string(), "--seed", "11", "--jobs", "4", "--out",
                                   dirs.back().string()},
                                  out, err);
        if (code != 0) {
            fs::remove_all(root);
            return {false, "bench exited with " + std::to_string(code) + ": " + err.str()};
        }
        outputs.push_back(out.str());
    }
    int files = 0, differ = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), dirs[0]);
        const std::string name = rel.filename().string();
        if (name.rfind("cpu_time", 0) == 0 || name == "bench.log") continue;  // timings
        ++files;
        differ += slurp(entry.path()) != slurp(dirs[1] / rel);
    }
    fs::remove_all(root);
    const bool same_stdout = outputs[0] == outputs[1];
    return {differ == 0 && same_stdout && files >= 26,
            fmt("%d/%d schedule and table files differ, stdout tables %s", differ, files,
                same_stdout ? "identical" : "DIFFER")};
}

Outcome validator_soundness() {
    const Instance inst = testing::mutation_instance();
    if (!validate_schedule(inst, testing::mutation_base()).ok()) return {false, "unperturbed schedule rejected"};
    int ok = 0, total = 0;
    std::string detail;
    for (const auto& m : testing::mutations()) {
        std::vector<ViolationKind> got;
        for (const auto& v : validate_schedule(inst, m.schedule).violations) got.push_back(v.kind);
        ++total;
        if (got == m.expected) {
            ++ok;
        } else {
            detail += " MISMATCH on " + m.name + ";";
        }
    }
    return {ok == total, fmt("%d/%d perturbations flagged with exactly their class", ok, total) + detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 oracle equivalence", oracle_equivalence},
        {"2 small/medium makespans", benchmark_makespans},
        {"3 la05", literature_la05},
        {"4 heuristic-guided speedup", heuristic_speedup},
        {"5 instance division", division_viability},
        {"6 reward/makespan identity", reward_identity},
        {"7 legal allocations", legal_allocations},
        {"8 determinism", determinism},
        {"9 validator soundness", validator_soundness},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
