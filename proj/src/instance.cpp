#include "fjsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fjsp {

OperationSpec::OperationSpec(std::vector<Alternative> alternatives)
    : alternatives_(std::move(alternatives)) {
    std::sort(alternatives_.begin(), alternatives_.end(),
              [](const Alternative& a, const Alternative& b) { return a.machine < b.machine; });
}

std::optional<Duration> OperationSpec::duration_on(MachineId machine) const noexcept {
    for (const auto& alt : alternatives_) {
        if (alt.machine == machine) return alt.duration;
        if (alt.machine > machine) break;
    }
    return std::nullopt;
}

Duration OperationSpec::min_duration() const noexcept {
    Duration best = 0;
    for (const auto& alt : alternatives_)
        if (best == 0 || alt.duration < best) best = alt.duration;
    return best;
}

Duration OperationSpec::max_duration() const noexcept {
    Duration best = 0;
    for (const auto& alt : alternatives_) best = std::max(best, alt.duration);
    return best;
}

double OperationSpec::mean_duration() const noexcept {
    if (alternatives_.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& alt : alternatives_) sum += alt.duration;
    return sum / static_cast<double>(alternatives_.size());
}

std::size_t Instance::total_operations() const noexcept {
    std::size_t total = 0;
    for (const auto& job : jobs) total += job.size();
    return total;
}

std::size_t Instance::max_operations() const noexcept {
    std::size_t best = 0;
    for (const auto& job : jobs) best = std::max(best, job.size());
    return best;
}

void Instance::validate(bool allow_empty_jobs) const {
    if (jobs.empty()) throw std::invalid_argument("instance has no jobs");
    if (machine_count < 1) throw std::invalid_argument("instance has no machines");
    if (total_operations() == 0) throw std::invalid_argument("instance has no operations");
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].operations.empty() && !allow_empty_jobs)
            throw std::invalid_argument("job " + std::to_string(j) + " has no operations");
        for (std::size_t o = 0; o < jobs[j].operations.size(); ++o) {
            const auto& alts = jobs[j].operations[o].alternatives();
            const std::string where = "job " + std::to_string(j) + " op " + std::to_string(o);
            if (alts.empty()) throw std::invalid_argument(where + " has no machine alternatives");
            for (std::size_t a = 0; a < alts.size(); ++a) {
                if (alts[a].machine < 0 || alts[a].machine >= machine_count)
                    throw std::invalid_argument(where + " references machine out of range");
                if (alts[a].duration < 1)
                    throw std::invalid_argument(where + " has a non-positive duration");
                if (a > 0 && alts[a].machine == alts[a - 1].machine)
                    throw std::invalid_argument(where + " lists a machine twice");
            }
        }
    }
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
    int number;
    std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ||
                                   line[i] == '\v' || line[i] == '\f'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ||
                                    line[i] == '\v' || line[i] == '\f'))
            ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

int to_int(std::string_view token, int line) {
    int value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

bool is_number(std::string_view token) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

class TokenCursor {
public:
    explicit TokenCursor(const Line& line) : line_(line) {}

    int next(const char* what) {
        if (pos_ >= line_.tokens.size())
            throw ParseError(line_.number, std::string("line ends early, missing ") + what);
        return to_int(line_.tokens[pos_++], line_.number);
    }
    bool exhausted() const noexcept { return pos_ == line_.tokens.size(); }

private:
    const Line& line_;
    std::size_t pos_ = 0;
};

JobSpec parse_job(const Line& line, int machine_count) {
    TokenCursor cur(line);
    JobSpec job;
    int op_count = cur.next("operation count");
    if (op_count < 1) throw ParseError(line.number, "operation count must be positive");
    for (int o = 0; o < op_count; ++o) {
        int alt_count = cur.next("alternative count");
        if (alt_count < 1)
            throw ParseError(line.number,
                             "operation " + std::to_string(o + 1) + " needs at least one machine");
        std::vector<Alternative> alts;
        for (int a = 0; a < alt_count; ++a) {
            int machine = cur.next("machine id");
            int duration = cur.next("duration");
            if (machine < 1 || machine > machine_count)
                throw ParseError(line.number, "machine id " + std::to_string(machine) +
                                                  " outside 1.." + std::to_string(machine_count));
            if (duration < 1)
                throw ParseError(line.number, "duration must be positive, got " + std::to_string(duration));
            for (const auto& prev : alts)
                if (prev.machine == machine - 1)
                    throw ParseError(line.number, "machine " + std::to_string(machine) +
                                                      " listed twice for one operation");
            alts.push_back({machine - 1, duration});
        }
        job.operations.emplace_back(std::move(alts));
    }
    if (!cur.exhausted())
        throw ParseError(line.number, "trailing tokens after declared operations");
    return job;
}

}  // namespace

Instance parse_instance(std::string_view text, std::string name) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto tokens = split_tokens(text.substr(pos, end - pos));
        if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
        pos = end + 1;
    }
    if (lines.empty()) throw ParseError(1, "empty instance");

    const Line& header = lines.front();
    if (header.tokens.size() < 2 || header.tokens.size() > 3)
        throw ParseError(header.number, "header must hold 2 or 3 numbers");
    Instance inst;
    inst.name = std::move(name);
    int job_count = to_int(header.tokens[0], header.number);
    inst.machine_count = to_int(header.tokens[1], header.number);
    if (header.tokens.size() == 3 && !is_number(header.tokens[2]))
        throw ParseError(header.number, "expected a number, got '" + std::string(header.tokens[2]) + "'");
    if (job_count < 1) throw ParseError(header.number, "job count must be positive");
    if (inst.machine_count < 1) throw ParseError(header.number, "machine count must be positive");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (static_cast<int>(i) > job_count)
            throw ParseError(lines[i].number, "more job lines than the declared " + std::to_string(job_count));
        inst.jobs.push_back(parse_job(lines[i], inst.machine_count));
    }
    if (inst.job_count() != job_count)
        throw ParseError(number, "expected " + std::to_string(job_count) + " job lines, found " +
                                     std::to_string(inst.job_count()));
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path.stem().string());
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.job_count() << ' ' << inst.machine_count << '\n';
    for (const auto& job : inst.jobs) {
        out << job.operations.size();
        for (const auto& op : job.operations) {
            out << ' ' << op.alternatives().size();
            for (const auto& alt : op.alternatives()) out << ' ' << alt.machine + 1 << ' ' << alt.duration;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<std::vector<double>> mean_durations(const Instance& inst, DurationEstimate estimate) {
    std::vector<std::vector<double>> out;
    out.reserve(inst.jobs.size());
    for (const auto& job : inst.jobs) {
        auto& row = out.emplace_back();
        row.reserve(job.size());
        for (const auto& op : job.operations) {
            switch (estimate) {
                case DurationEstimate::Mean: row.push_back(op.mean_duration()); break;
                case DurationEstimate::Min: row.push_back(op.min_duration()); break;
                case DurationEstimate::Max: row.push_back(op.max_duration()); break;
            }
        }
    }
    return out;
}

}  // namespace fjsp
