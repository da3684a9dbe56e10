#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fjsp/environment.hpp"
#include "fjsp/prepopulate.hpp"
#include "fjsp/qtable.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

using Rng = std::mt19937_64;

struct LearnerConfig {
    double alpha = 0.1;
    double gamma = 1.0;
    double epsilon_start = 1.0;
    double epsilon_min = 0.05;
    double epsilon_decay = 0.999;
    int episodes = 10000;
    int test_interval = 100;
    std::uint64_t seed = 0;
    bool prepopulate = true;
    /// Backward pass stores the cumulative reward including the step's own reward.
    bool include_immediate_reward = false;
    /// Greedy tests without improvement before the run counts as converged.
    int convergence_patience = 20;
    bool stop_on_convergence = false;
    /// Wall-clock limit in seconds; 0 disables it.
    double time_budget_seconds = 0.0;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct TestPoint {
    int episode = 0;
    int makespan = 0;
    double seconds = 0.0;
};

struct TrainingReport {
    Schedule best_schedule;
    int best_makespan = 0;
    int best_episode = 0;
    /// Action indices of the episode that produced best_schedule.
    std::vector<std::size_t> best_actions;

    std::vector<int> episode_makespans;
    std::vector<TestPoint> tests;

    /// First greedy test matching best_makespan. When no test matches, the
    /// run did not converge and these hold the full run's totals.
    bool reached_in_test = false;
    double convergence_seconds = 0.0;
    int episodes_to_best = 0;

    /// Greedy makespan stalled for `convergence_patience` tests.
    bool converged = false;
    int converged_at_episode = 0;

    int episodes_run = 0;
    double elapsed_seconds = 0.0;
    bool budget_exhausted = false;
};

/// Epsilon-greedy choice over [0, legal_count).
std::size_t select_action(const QTable& q, const Observation& obs, std::size_t legal_count, double epsilon,
                          Rng& rng);

/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)); the max term is
/// 0 when next_legal_count is 0 (terminal next state).
void update(QTable& q, const Observation& s, std::size_t action, int reward, const Observation& s_next,
            std::size_t next_legal_count, double alpha, double gamma);

TrainingReport train(const Instance& inst, const LearnerConfig& cfg);
/// Trains into an existing table; `mask` restricts the action space.
TrainingReport train(const Instance& inst, const LearnerConfig& cfg, QTable& q,
                     const AssignmentMask* mask = nullptr);

struct Rollout {
    Schedule schedule;
    std::vector<std::size_t> actions;
    int makespan = 0;
};

/// One episode following argmax Q with no updates.
Rollout greedy_rollout(const Instance& inst, const QTable& q, const AssignmentMask* mask = nullptr);

}  // namespace fjsp
