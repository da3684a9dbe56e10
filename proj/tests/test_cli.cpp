#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fjsp/cli.hpp"
#include "support.hpp"

using namespace fjsp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("fjsp-test-" + tag + "-" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string data(const std::string& name) { return testing::data_file(name).string(); }

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("solve writes a schedule and a log, and reruns identically") {
    TempDir a("solve-a"), b("solve-b");
    const Run r = run({"solve", "--instance", data("toy.fjs"), "--solver", "rl", "--seed", "7", "--out", a.path.string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "toy rl makespan 53\n");
    const std::string sched = slurp(a / "toy.rl.sched");
    const std::string log = slurp(a / "solve.log");
    CHECK(log.find("seed=7") != std::string::npos);
    CHECK(log.find("cpu=") != std::string::npos);

    CHECK(run({"solve", "--instance", data("toy.fjs"), "--solver", "rl", "--seed", "7", "--out", b.path.string()}).code ==
          cli::kOk);
    CHECK(slurp(b / "toy.rl.sched") == sched);

    const Run v = run({"validate", "--instance", data("toy.fjs"), "--schedule", a / "toy.rl.sched"});
    CHECK(v.code == cli::kOk);
    CHECK(v.out == "ok makespan 53\n");
}

TEST_CASE("fifo on la05 validates, gantt on request") {
    TempDir d("la05");
    CHECK(run({"solve", "--instance", data("la05.fjs"), "--solver", "fifo", "--gantt", "--out", d.path.string()}).code ==
          cli::kOk);
    CHECK(fs::exists(d / "la05.fifo.svg"));
    const Run v = run({"validate", "--instance", data("la05.fjs"), "--schedule", d / "la05.fifo.sched"});
    CHECK(v.code == cli::kOk);
}

TEST_CASE("oracle on a large instance reports the budget and fails") {
    TempDir d("oracle");
    std::mt19937_64 rng(10);
    const Instance big = testing::random_instance(rng, {10, 10, 11, 11, 8, 30});
    {
        std::ofstream f(d / "big.fjs");
        f << write_instance(big);
    }
    const Run r = run({"solve", "--instance", d / "big.fjs", "--solver", "oracle", "--out", d.path.string()});
    CHECK(r.code == cli::kFailure);
    CHECK(r.err.find("budget exceeded") != std::string::npos);
}

TEST_CASE("bench table: oracle column is a lower bound, failures are NA") {
    TempDir d("bench");
    const Run r = run({"bench", "--instance", data("toy.fjs"), "--episodes", "2000", "--jobs", "3", "--out",
                       d.path.string()});
    CHECK(r.code == cli::kOk);
    const auto rows = csv(slurp(d / "makespan.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"instance", "jobs", "machines", "rl", "rl-plain", "rl-divided", "rs",
                                              "fifo", "mwkr", "ga", "oracle"});
    CHECK(rows[1][0] == "toy");
    const int oracle = std::stoi(rows[1].back());
    CHECK(oracle == 53);
    for (std::size_t c = 3; c < rows[1].size(); ++c) CHECK(std::stoi(rows[1][c]) >= oracle);
    CHECK(r.out == slurp(d / "makespan.txt"));
    CHECK(fs::exists(d / "cpu_time.txt"));
    CHECK(csv(slurp(d / "cpu_time.csv")).size() == 2);
    CHECK(fs::exists(d.path / "schedules" / "toy.oracle.sched"));

    TempDir e("bench-na");
    const Run na = run({"bench", "--instance", data("ft06.fjs"), "--solver", "fifo,oracle", "--oracle-nodes", "1",
                        "--out", e.path.string()});
    CHECK(na.code == cli::kOk);
    CHECK(slurp(e / "makespan.csv") == "instance,jobs,machines,fifo,oracle\nft06,6,6,65,NA\n");
    CHECK(na.err.find("NA") != std::string::npos);
}

TEST_CASE("validate reports tampering") {
    TempDir d("validate");
    REQUIRE(run({"solve", "--instance", data("toy.fjs"), "--solver", "fifo", "--out", d.path.string()}).code == 0);
    const Schedule good = parse_schedule(slurp(d / "toy.fifo.sched"));

    Schedule overlap = good;
    // Put the two operations that run on M_1 at the same time.
    std::vector<std::size_t> on_m0;
    for (std::size_t i = 0; i < overlap.entries.size(); ++i)
        if (overlap.entries[i].machine == 0) on_m0.push_back(i);
    REQUIRE(on_m0.size() >= 2);
    auto& moved = overlap.entries[on_m0[1]];
    const int len = moved.end - moved.start;
    moved.start = overlap.entries[on_m0[0]].start;
    moved.end = moved.start + len;
    {
        std::ofstream f(d / "overlap.sched");
        f << write_schedule(overlap);
    }
    const Run r = run({"validate", "--instance", data("toy.fjs"), "--schedule", d / "overlap.sched"});
    CHECK(r.code == cli::kFailure);
    CHECK(r.out.find("machine-overlap") != std::string::npos);

    Schedule missing = good;
    missing.entries.pop_back();
    {
        std::ofstream f(d / "missing.sched");
        f << write_schedule(missing);
    }
    const Run m = run({"validate", "--instance", data("toy.fjs"), "--schedule", d / "missing.sched"});
    CHECK(m.code == cli::kFailure);
    CHECK(m.out.find("incomplete") != std::string::npos);

    {
        std::ofstream f(d / "garbage.sched");
        f << "0 0 zero\n";
    }
    CHECK(run({"validate", "--instance", data("toy.fjs"), "--schedule", d / "garbage.sched"}).code == cli::kFailure);
    CHECK(run({"validate", "--instance", data("toy.fjs"), "--schedule", d / "nope.sched"}).code == cli::kUsage);
}

TEST_CASE("usage errors exit with 2") {
    TempDir d("usage");
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"solve", "--bogus"}).code == cli::kUsage);
    CHECK(run({"solve", "--out", d.path.string()}).code == cli::kUsage);  // no instance
    CHECK(run({"solve", "--instance", data("toy.fjs"), "--solver", "magic", "--out", d.path.string()}).code ==
          cli::kUsage);
    CHECK(run({"solve", "--instance", data("toy.fjs"), "--divide", "1", "--out", d.path.string()}).code ==
          cli::kUsage);
    CHECK(run({"solve", "--instance", data("toy.fjs"), "--alpha", "0", "--out", d.path.string()}).code ==
          cli::kUsage);
    CHECK(run({"solve", "--instance", data("missing.fjs"), "--out", d.path.string()}).code == cli::kUsage);
    CHECK(run({"solve", "--instance", data("toy.fjs"), "--divide-strategy", "halves", "--out", d.path.string()})
              .code == cli::kUsage);
    CHECK(run({"solve", "--instance", data("toy.fjs"), "--config", d / "absent.ini", "--out", d.path.string()})
              .code == cli::kUsage);
    const Run help = run({"--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win") {
    TempDir d("config");
    {
        std::ofstream f(d / "run.ini");
        f << "# defaults\nsolver=fifo,mwkr\nseed=3\nduration-estimate=max\nprepopulate=false\n";
    }
    const Run r = run({"solve", "--config", d / "run.ini", "--instance", data("la05.fjs"), "--out", d.path.string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "la05 fifo makespan 610\nla05 mwkr makespan 593\n");
    CHECK(slurp(d / "solve.log").find("seed=3") != std::string::npos);
    CHECK(slurp(d / "solve.log").find("prepopulate=0") != std::string::npos);

    const Run o = run({"solve", "--config", d / "run.ini", "--solver", "fifo", "--seed", "4", "--instance",
                       data("la05.fjs"), "--out", d.path.string()});
    CHECK(o.out == "la05 fifo makespan 610\n");
    CHECK(slurp(d / "solve.log").find("seed=4") != std::string::npos);

    {
        std::ofstream f(d / "bad.ini");
        f << "colour=blue\n";
    }
    CHECK(run({"solve", "--config", d / "bad.ini", "--instance", data("toy.fjs"), "--out", d.path.string()}).code ==
          cli::kUsage);
}

TEST_CASE("divided rl from the command line") {
    TempDir d("divide");
    for (const std::string strategy : {"ops", "duration"}) {
        const Run r = run({"solve", "--instance", data("toy.fjs"), "--solver", "rl", "--divide", "2",
                           "--divide-strategy", strategy, "--episodes", "1000", "--out", d.path.string()});
        CHECK(r.code == cli::kOk);
        CHECK(slurp(d / "solve.log").find("stage 2") != std::string::npos);
    }
}

TEST_CASE("solver names") {
    for (auto s : cli::all_solvers()) CHECK(cli::parse_solver(cli::to_string(s)) == s);
    CHECK_THROWS_AS(cli::parse_solver("tabu"), std::invalid_argument);
}
