#pragma once

#include <cstdint>
#include <vector>

namespace secpac::halting {

// Distribution state of the success-run process after t trials: p_t(k) is
// the probability of currently sitting on a k-long streak without having
// halted, and halted_mass is Q_t, the probability of having halted by t.
struct StreakState {
    std::vector<double> streak_probs;  // index k = 0 .. m_h-1
    double halted_mass = 0.0;
    std::uint64_t t = 0;
};

// Live certification state: counts the current streak until m_h consecutive
// successes have been seen.
struct StreakTracker {
    std::uint64_t current_run = 0;
    std::uint64_t m_h = 1;
    std::uint64_t trials_consumed = 0;
    bool halted = false;
};

// Expected trials until a run of m_h successes, (1 - q^m_h)/((1-q) q^m_h).
// q must lie strictly inside (0, 1); the q = 1 limit is exactly m_h but the
// formula itself degenerates there.
double run_length_mean(double q, std::uint64_t m_h);

// Conservative halting bound from splitting the budget into independent
// blocks: 1 - (1 - q^m_h)^{floor(m_cert/m_h)}.
double halting_prob_block(double q, std::uint64_t m_h, std::uint64_t m_cert);

// Exact halting probability within m_cert trials, computed by the streak
// recursion. O(m_h * m_cert) time, O(m_h) memory.
double halting_prob_exact(double q, std::uint64_t m_h, std::uint64_t m_cert);

// Full halting-probability trace Q_0 .. Q_{m_cert} (m_cert + 1 entries).
std::vector<double> halting_trace(double q, std::uint64_t m_h, std::uint64_t m_cert);

// Fresh process state: all mass on the empty streak.
StreakState streak_init(std::uint64_t m_h);

// One recursion step: a success moves each streak up one level (streaks at
// m_h - 1 halt), a failure resets to the empty streak.
void streak_advance(StreakState& state, double q);

// One observed trial: success extends the streak, failure resets it. Sets
// halted once current_run reaches m_h. Stepping a halted tracker is a
// contract violation and throws.
StreakTracker tracker_step(StreakTracker tracker, bool success);

}  // namespace secpac::halting
