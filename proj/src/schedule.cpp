#include "fjsp/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fjsp {

void Schedule::canonicalize() {
    std::sort(entries.begin(), entries.end(), [](const ScheduleEntry& a, const ScheduleEntry& b) {
        if (a.job != b.job) return a.job < b.job;
        if (a.op != b.op) return a.op < b.op;
        return a.start < b.start;
    });
}

int makespan(const Schedule& sched) {
    if (sched.entries.empty()) throw std::invalid_argument("makespan of an empty schedule");
    int best = sched.entries.front().end;
    for (const auto& e : sched.entries) best = std::max(best, e.end);
    return best;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::JobOverlap: return "job-overlap";
        case ViolationKind::MachineOverlap: return "machine-overlap";
        case ViolationKind::Interruption: return "interruption";
        case ViolationKind::Precedence: return "precedence";
        case ViolationKind::Incomplete: return "incomplete";
        case ViolationKind::Capability: return "capability";
        case ViolationKind::DurationMismatch: return "duration-mismatch";
        case ViolationKind::InvalidEntry: return "invalid-entry";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok\n";
    std::ostringstream out;
    for (const auto& v : violations) out << to_string(v.kind) << ": " << v.message << '\n';
    return out.str();
}

namespace {

std::string describe(const ScheduleEntry& e) {
    std::ostringstream out;
    out << "J" << e.job << "/O" << e.op << " on M" << e.machine << " [" << e.start << "," << e.end << ")";
    return out.str();
}

bool overlaps(const ScheduleEntry& a, const ScheduleEntry& b) {
    return a.start < b.end && b.start < a.end;
}

}  // namespace

ValidationReport validate_schedule(const Instance& inst, const Schedule& sched) {
    ValidationReport report;
    auto flag = [&](ViolationKind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };

    // pieces[job][op] -> indices of usable entries
    std::vector<std::vector<std::vector<std::size_t>>> pieces(inst.jobs.size());
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) pieces[j].resize(inst.jobs[j].size());

    for (std::size_t i = 0; i < sched.entries.size(); ++i) {
        const auto& e = sched.entries[i];
        if (e.job < 0 || e.job >= inst.job_count() || e.op < 0 ||
            e.op >= static_cast<int>(inst.jobs[e.job].size())) {
            flag(ViolationKind::InvalidEntry, describe(e) + " does not name an operation of the instance");
            continue;
        }
        if (e.end <= e.start) {
            flag(ViolationKind::InvalidEntry, describe(e) + " has an empty or negative interval");
            continue;
        }
        if (e.machine < 0 || e.machine >= inst.machine_count || !inst.operation(e.job, e.op).runs_on(e.machine))
            flag(ViolationKind::Capability, describe(e) + ": machine cannot run this operation");
        pieces[e.job][e.op].push_back(i);
    }

    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        for (std::size_t o = 0; o < inst.jobs[j].size(); ++o) {
            const auto& idx = pieces[j][o];
            const std::string name = "J" + std::to_string(j) + "/O" + std::to_string(o);
            if (idx.empty()) {
                flag(ViolationKind::Incomplete, name + " is never scheduled");
                continue;
            }
            if (idx.size() > 1)
                flag(ViolationKind::Interruption, name + " is split into " + std::to_string(idx.size()) + " pieces");
            int processed = 0;
            for (auto i : idx) processed += sched.entries[i].end - sched.entries[i].start;
            const auto& first = sched.entries[idx.front()];
            if (auto d = inst.operation(first.job, first.op).duration_on(first.machine); d && *d != processed)
                flag(ViolationKind::DurationMismatch, name + " processed for " + std::to_string(processed) +
                                                          ", expected " + std::to_string(*d));
        }
    }

    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const auto& ops = pieces[j];
        std::vector<std::size_t> all;
        for (const auto& idx : ops) all.insert(all.end(), idx.begin(), idx.end());
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = a + 1; b < all.size(); ++b) {
                const auto& ea = sched.entries[all[a]];
                const auto& eb = sched.entries[all[b]];
                if (ea.op != eb.op && overlaps(ea, eb))
                    flag(ViolationKind::JobOverlap, describe(ea) + " overlaps " + describe(eb));
            }
        auto first_start = [&](std::size_t o) {
            int s = sched.entries[ops[o].front()].start;
            for (auto i : ops[o]) s = std::min(s, sched.entries[i].start);
            return s;
        };
        for (std::size_t o = 0; o + 1 < ops.size(); ++o) {
            if (ops[o].empty() || ops[o + 1].empty()) continue;
            if (first_start(o + 1) < first_start(o))
                flag(ViolationKind::Precedence, "J" + std::to_string(j) + "/O" + std::to_string(o + 1) +
                                                    " starts before J" + std::to_string(j) + "/O" +
                                                    std::to_string(o));
        }
    }

    std::map<MachineId, std::vector<std::size_t>> by_machine;
    for (const auto& job : pieces)
        for (const auto& idx : job)
            for (auto i : idx) by_machine[sched.entries[i].machine].push_back(i);
    for (auto& [machine, idx] : by_machine) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return sched.entries[a].start < sched.entries[b].start;
        });
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                const auto& ea = sched.entries[idx[a]];
                const auto& eb = sched.entries[idx[b]];
                if (eb.start >= ea.end) break;
                flag(ViolationKind::MachineOverlap, describe(ea) + " overlaps " + describe(eb));
            }
    }
    return report;
}

std::string write_schedule(const Schedule& sched) {
    std::ostringstream out;
    for (const auto& e : sched.entries)
        out << e.job << ' ' << e.op << ' ' << e.machine << ' ' << e.start << ' ' << e.end << '\n';
    if (!sched.entries.empty()) out << "makespan " << makespan(sched) << '\n';
    return out.str();
}

Schedule parse_schedule(std::string_view text) {
    Schedule sched;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    bool trailer = false;
    while (std::getline(in, line)) {
        ++number;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        if (trailer) throw ParseError(number, "content after makespan trailer");
        if (first == "makespan") {
            int value = 0;
            if (!(fields >> value)) throw ParseError(number, "makespan trailer without a value");
            trailer = true;
            continue;
        }
        ScheduleEntry e;
        std::istringstream rest(line);
        std::string extra;
        if (!(rest >> e.job >> e.op >> e.machine >> e.start >> e.end) || (rest >> extra))
            throw ParseError(number, "expected 'job op machine start end'");
        sched.entries.push_back(e);
    }
    return sched;
}

std::string schedule_to_json(const Schedule& sched, const Instance& inst) {
    nlohmann::json doc;
    doc["format"] = "fjsp-schedule";
    doc["version"] = 1;
    doc["instance"] = inst.name;
    doc["jobs"] = inst.job_count();
    doc["machines"] = inst.machine_count;
    doc["makespan"] = sched.entries.empty() ? 0 : makespan(sched);
    auto& entries = doc["entries"] = nlohmann::json::array();
    for (const auto& e : sched.entries)
        entries.push_back({{"job", e.job}, {"op", e.op}, {"machine", e.machine}, {"start", e.start}, {"end", e.end}});
    return doc.dump(2) + "\n";
}

namespace {

std::vector<std::vector<ScheduleEntry>> lanes(const Schedule& sched, int machine_count) {
    std::vector<std::vector<ScheduleEntry>> out(static_cast<std::size_t>(std::max(machine_count, 0)));
    for (const auto& e : sched.entries)
        if (e.machine >= 0 && e.machine < machine_count) out[e.machine].push_back(e);
    for (auto& lane : out)
        std::sort(lane.begin(), lane.end(), [](const ScheduleEntry& a, const ScheduleEntry& b) {
            if (a.start != b.start) return a.start < b.start;
            return a.job < b.job;
        });
    return out;
}

}  // namespace

std::string render_gantt_text(const Schedule& sched, int machine_count) {
    std::ostringstream out;
    auto rows = lanes(sched, machine_count);
    for (std::size_t m = 0; m < rows.size(); ++m) {
        out << "M" << m << " |";
        for (const auto& e : rows[m]) out << " J" << e.job << "." << e.op << "[" << e.start << "," << e.end << ")";
        out << '\n';
    }
    if (!sched.entries.empty()) out << "makespan " << makespan(sched) << '\n';
    return out.str();
}

std::string render_gantt_svg(const Schedule& sched, int machine_count) {
    constexpr int kLabel = 48, kLane = 28, kGap = 6, kWidth = 800, kAxis = 24;
    const int horizon = sched.entries.empty() ? 1 : makespan(sched);
    const double scale = static_cast<double>(kWidth) / horizon;
    const int height = machine_count * (kLane + kGap) + kAxis;
    auto rows = lanes(sched, machine_count);

    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kLabel + kWidth + 10 << "\" height=\""
        << height << "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (std::size_t m = 0; m < rows.size(); ++m) {
        const int y = static_cast<int>(m) * (kLane + kGap);
        out << "<g class=\"lane\" data-machine=\"" << m << "\">\n";
        out << "<text x=\"4\" y=\"" << y + kLane / 2 + 4 << "\">M" << m << "</text>\n";
        for (const auto& e : rows[m]) {
            const int hue = (e.job * 67) % 360;
            const double x = kLabel + e.start * scale;
            const double w = (e.end - e.start) * scale;
            out << "<rect class=\"op\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << kLane
                << "\" fill=\"hsl(" << hue << ",60%,70%)\" stroke=\"#333\"><title>J" << e.job << " O" << e.op
                << " [" << e.start << "," << e.end << ")</title></rect>\n";
            out << "<text x=\"" << x + 2 << "\" y=\"" << y + kLane / 2 + 4 << "\">J" << e.job << "." << e.op
                << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "<text x=\"" << kLabel << "\" y=\"" << height - 6 << "\">0</text>\n";
    out << "<text x=\"" << kLabel + kWidth - 30 << "\" y=\"" << height - 6 << "\">" << horizon << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace fjsp
