#include "fjsp/qlearning.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace fjsp {

void LearnerConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in [0, 1]");
    if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0)) throw std::invalid_argument("epsilon_start must be in [0, 1]");
    if (!(epsilon_min >= 0.0 && epsilon_min <= epsilon_start))
        throw std::invalid_argument("epsilon_min must be in [0, epsilon_start]");
    if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) throw std::invalid_argument("epsilon_decay must be in (0, 1]");
    if (episodes < 1) throw std::invalid_argument("episodes must be positive");
    if (test_interval < 1) throw std::invalid_argument("test_interval must be positive");
    if (convergence_patience < 1) throw std::invalid_argument("convergence_patience must be positive");
    if (time_budget_seconds < 0.0) throw std::invalid_argument("time budget must be non-negative");
}

std::size_t select_action(const QTable& q, const Observation& obs, std::size_t legal_count, double epsilon,
                          Rng& rng) {
    if (legal_count == 0) throw std::invalid_argument("select_action with no legal actions");
    if (epsilon > 0.0) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(rng) < epsilon) {
            std::uniform_int_distribution<std::size_t> pick(0, legal_count - 1);
            return pick(rng);
        }
    }
    return q.argmax(obs, legal_count);
}

void update(QTable& q, const Observation& s, std::size_t action, int reward, const Observation& s_next,
            std::size_t next_legal_count, double alpha, double gamma) {
    const double future = next_legal_count == 0 ? 0.0 : q.max_value(s_next, next_legal_count);
    const double current = q.value(s, action);
    q.set(s, action, current + alpha * (reward + gamma * future - current));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rollout run_greedy(Environment& env, const QTable& q) {
    Rollout out;
    Observation obs = env.reset();
    while (!env.done()) {
        const std::size_t a = q.argmax(obs, env.legal_count());
        out.actions.push_back(a);
        obs = env.step(a).observation;
    }
    out.schedule = env.extract_schedule();
    out.makespan = env.clock();
    return out;
}

}  // namespace

TrainingReport train(const Instance& inst, const LearnerConfig& cfg) {
    QTable q;
    return train(inst, cfg, q);
}

TrainingReport train(const Instance& inst, const LearnerConfig& cfg, QTable& q, const AssignmentMask* mask) {
    cfg.validate();
    const auto t0 = Clock::now();
    Environment env(inst, mask);
    env.set_record_trace(false);
    Rng rng(cfg.seed);
    const auto order = cfg.include_immediate_reward ? BackwardOrder::AccumulateThenStore
                                                    : BackwardOrder::StoreThenAccumulate;

    TrainingReport report;
    report.best_makespan = std::numeric_limits<int>::max();
    report.episode_makespans.reserve(static_cast<std::size_t>(cfg.episodes));

    double epsilon = cfg.epsilon_start;
    int best_test = std::numeric_limits<int>::max();
    int stale_tests = 0;
    EpisodeTrace trace;

    for (int episode = 1; episode <= cfg.episodes; ++episode) {
        trace.clear();
        Observation obs = env.reset();
        std::size_t legal = env.legal_count();
        while (!env.done()) {
            const std::size_t a = select_action(q, obs, legal, epsilon, rng);
            StepResult res = env.step(a);
            const std::size_t next_legal = res.done ? 0 : env.legal_count();
            // With prepopulation a pair's first estimate is its realised return,
            // written by the backward pass below.
            if (!cfg.prepopulate || q.contains(obs, a))
                update(q, obs, a, res.reward, res.observation, next_legal, cfg.alpha, cfg.gamma);
            trace.push(std::move(obs), a, res.reward);
            obs = std::move(res.observation);
            legal = next_legal;
        }
        const int ms = env.clock();
        report.episode_makespans.push_back(ms);
        if (ms < report.best_makespan) {
            report.best_makespan = ms;
            report.best_episode = episode;
            report.best_schedule = env.extract_schedule();
            report.best_actions = trace.actions;
        }
        if (cfg.prepopulate) backward_pass(q, trace, order);

        if (episode % cfg.test_interval == 0) {
            Rollout greedy = run_greedy(env, q);
            report.tests.push_back({episode, greedy.makespan, seconds_since(t0)});
            if (greedy.makespan < report.best_makespan) {
                report.best_makespan = greedy.makespan;
                report.best_episode = episode;
                report.best_schedule = std::move(greedy.schedule);
                report.best_actions = std::move(greedy.actions);
            }
            if (greedy.makespan < best_test) {
                best_test = greedy.makespan;
                stale_tests = 0;
            } else if (!report.converged && ++stale_tests >= cfg.convergence_patience) {
                report.converged = true;
                report.converged_at_episode = episode;
            }
        }

        epsilon = std::max(cfg.epsilon_min, epsilon * cfg.epsilon_decay);
        report.episodes_run = episode;
        if (report.converged && cfg.stop_on_convergence) break;
        if (cfg.time_budget_seconds > 0.0 && seconds_since(t0) >= cfg.time_budget_seconds) {
            report.budget_exhausted = episode < cfg.episodes;
            break;
        }
    }

    report.elapsed_seconds = seconds_since(t0);
    report.convergence_seconds = report.elapsed_seconds;
    report.episodes_to_best = report.episodes_run;
    for (const auto& t : report.tests) {
        if (t.makespan == report.best_makespan) {
            report.reached_in_test = true;
            report.convergence_seconds = t.seconds;
            report.episodes_to_best = t.episode;
            break;
        }
    }
    return report;
}

Rollout greedy_rollout(const Instance& inst, const QTable& q, const AssignmentMask* mask) {
    Environment env(inst, mask);
    env.set_record_trace(false);
    return run_greedy(env, q);
}

}  // namespace fjsp
