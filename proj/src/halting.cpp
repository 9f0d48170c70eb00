#include "secpac/halting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "secpac/errors.hpp"

namespace secpac::halting {

namespace {

void check_q(const char* who, double q, bool open_interval) {
    const bool ok = open_interval ? (q > 0.0 && q < 1.0) : (q >= 0.0 && q <= 1.0);
    if (!ok) {
        throw domain_error(std::string(who) + ": q out of range, got " + std::to_string(q));
    }
}

void check_mh(const char* who, std::uint64_t m_h) {
    if (m_h < 1) {
        throw domain_error(std::string(who) + ": m_h must be >= 1");
    }
}

// q^m in the log domain; exact at the q = 0 and q = 1 endpoints.
double pow_q(double q, std::uint64_t m) {
    if (q == 0.0) return m == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(m) * std::log(q));
}

// Sum of the streak vector. Compensated (Neumaier) summation for long
// vectors, where many near-underflow summands would otherwise lose mass.
double mass_sum(const std::vector<double>& p) {
    if (p.size() <= 64) {
        double s = 0.0;
        for (double v : p) s += v;
        return s;
    }
    double s = 0.0, comp = 0.0;
    for (double v : p) {
        const double t = s + v;
        comp += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    return s + comp;
}

}  // namespace

double run_length_mean(double q, std::uint64_t m_h) {
    check_q("run_length_mean", q, /*open_interval=*/true);
    check_mh("run_length_mean", m_h);
    const double qm = pow_q(q, m_h);
    return (1.0 - qm) / ((1.0 - q) * qm);
}

double halting_prob_block(double q, std::uint64_t m_h, std::uint64_t m_cert) {
    check_q("halting_prob_block", q, /*open_interval=*/false);
    check_mh("halting_prob_block", m_h);
    const std::uint64_t blocks = m_cert / m_h;
    if (blocks == 0) return 0.0;
    const double qm = pow_q(q, m_h);
    if (qm >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(blocks) * std::log1p(-qm));
}

StreakState streak_init(std::uint64_t m_h) {
    check_mh("streak_init", m_h);
    StreakState s;
    s.streak_probs.assign(m_h, 0.0);
    s.streak_probs[0] = 1.0;
    return s;
}

void streak_advance(StreakState& state, double q) {
    check_q("streak_advance", q, /*open_interval=*/false);
    auto& p = state.streak_probs;
    const std::size_t m_h = p.size();
    const double alive = mass_sum(p);
    state.halted_mass += q * p[m_h - 1];
    for (std::size_t k = m_h - 1; k >= 1; --k) {
        p[k] = q * p[k - 1];
    }
    p[0] = (1.0 - q) * alive;
    ++state.t;
}

double halting_prob_exact(double q, std::uint64_t m_h, std::uint64_t m_cert) {
    check_q("halting_prob_exact", q, /*open_interval=*/false);
    StreakState s = streak_init(m_h);
    for (std::uint64_t t = 0; t < m_cert; ++t) {
        streak_advance(s, q);
    }
    return s.halted_mass;
}

std::vector<double> halting_trace(double q, std::uint64_t m_h, std::uint64_t m_cert) {
    check_q("halting_trace", q, /*open_interval=*/false);
    StreakState s = streak_init(m_h);
    std::vector<double> trace;
    trace.reserve(m_cert + 1);
    trace.push_back(0.0);
    for (std::uint64_t t = 0; t < m_cert; ++t) {
        streak_advance(s, q);
        trace.push_back(s.halted_mass);
    }
    return trace;
}

StreakTracker tracker_step(StreakTracker tracker, bool success) {
    if (tracker.halted) {
        throw std::logic_error("tracker_step: tracker has already halted");
    }
    check_mh("tracker_step", tracker.m_h);
    ++tracker.trials_consumed;
    if (success) {
        ++tracker.current_run;
        if (tracker.current_run >= tracker.m_h) {
            tracker.halted = true;
        }
    } else {
        tracker.current_run = 0;
    }
    return tracker;
}

}  // namespace secpac::halting
