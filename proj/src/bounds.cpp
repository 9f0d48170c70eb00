#include "secpac/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secpac/errors.hpp"

namespace secpac::bounds {

namespace {

void check_eta(const char* who, double eta) {
    if (!(eta >= 0.0 && eta < 0.5)) {
        throw domain_error(std::string(who) + ": eta must lie in [0, 0.5), got " +
                           std::to_string(eta));
    }
}

std::uint64_t ceil_count(double x) {
    return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

void validate(const LearningTarget& target) {
    if (!(target.epsilon_star >= 0.0 && target.epsilon_star < 0.5)) {
        throw domain_error("LearningTarget: epsilon_star must lie in [0, 0.5), got " +
                           std::to_string(target.epsilon_star));
    }
    if (!(target.delta_star > 0.0 && target.delta_star <= 1.0)) {
        throw domain_error("LearningTarget: delta_star must lie in (0, 1], got " +
                           std::to_string(target.delta_star));
    }
}

void validate(const HaltingDesign& design) {
    validate(design.target);
    if (design.m_h < 1) {
        throw domain_error("HaltingDesign: m_h must be >= 1");
    }
    check_eta("HaltingDesign", design.eta_c);
}

void validate(const ClassCapacity& cap) {
    if (cap.h_size < 1) {
        throw domain_error("ClassCapacity: h_size must be >= 1");
    }
}

void validate(const PrlBaseline& baseline) {
    if (!(baseline.xi > 0.0)) {
        throw domain_error("PrlBaseline: xi must be positive, got " +
                           std::to_string(baseline.xi));
    }
}

std::uint64_t sample_bound_noiseless(const LearningTarget& target, const ClassCapacity& cap) {
    validate(target);
    validate(cap);
    if (target.epsilon_star == 0.0) {
        throw domain_error("sample_bound_noiseless: epsilon_star must be positive");
    }
    const double ln_term =
        std::log(static_cast<double>(cap.h_size)) - std::log(target.delta_star);
    return ceil_count(ln_term / target.epsilon_star);
}

std::uint64_t sample_bound_rcn(const LearningTarget& target, const ClassCapacity& cap,
                               double eta) {
    validate(target);
    validate(cap);
    check_eta("sample_bound_rcn", eta);
    if (target.epsilon_star == 0.0) {
        throw domain_error("sample_bound_rcn: epsilon_star must be positive");
    }
    const double coef = 2.0 / (target.epsilon_star * target.epsilon_star *
                               (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta));
    const double ln_term =
        std::log(2.0 * static_cast<double>(cap.h_size)) - std::log(target.delta_star);
    return ceil_count(coef * ln_term);
}

DeltaMin delta_min(std::uint64_t m, double epsilon, double eta, const ClassCapacity& cap) {
    validate(cap);
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        throw domain_error("delta_min: epsilon must lie in [0, 0.5)");
    }
    check_eta("delta_min", eta);
    // Log domain: 2|H| alone can be large and gamma*m can reach thousands.
    const double log_raw = std::log(2.0 * static_cast<double>(cap.h_size)) -
                           gamma_rate(epsilon, eta) * static_cast<double>(m);
    DeltaMin out;
    out.raw = std::exp(log_raw);
    out.clamped = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

double gamma_rate(double epsilon, double eta) {
    return 0.5 * epsilon * epsilon * (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta);
}

double p_bl(std::uint64_t m, double epsilon, double eta) {
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        throw domain_error("p_bl: epsilon must lie in [0, 0.5)");
    }
    check_eta("p_bl", eta);
    return -std::expm1(-gamma_rate(epsilon, eta) * static_cast<double>(m));
}

double p_prl(std::uint64_t m, const PrlBaseline& baseline) {
    validate(baseline);
    return -std::expm1(-baseline.xi * static_cast<double>(m));
}

double q_obs(double epsilon, double eta) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
        throw domain_error("q_obs: epsilon must lie in [0, 0.5], got " +
                           std::to_string(epsilon));
    }
    check_eta("q_obs", eta);
    return 1.0 - eta - (1.0 - 2.0 * eta) * epsilon;
}

double delta_cert(const LearningTarget& target, double eta, std::uint64_t m_h) {
    validate(target);
    if (m_h < 1) {
        throw domain_error("delta_cert: m_h must be >= 1");
    }
    const double q = q_obs(target.epsilon_star, eta);
    // exp(m_h ln q) rather than pow: m_h ln q can reach -1e3 and must
    // underflow cleanly to 0.
    return std::exp(static_cast<double>(m_h) * std::log(q));
}

std::uint64_t min_memory(const LearningTarget& target, double eta_c) {
    validate(target);
    const double q = q_obs(target.epsilon_star, eta_c);
    if (q >= 1.0) {
        if (target.delta_star >= 1.0) {
            return 1;  // any run length meets a vacuous target
        }
        throw domain_error(
            "min_memory: q_obs = 1 (epsilon_star = eta_c = 0); no finite run length "
            "certifies below delta_star < 1");
    }
    const double ratio = -std::log(target.delta_star) / -std::log(q);
    std::uint64_t k = std::max<std::uint64_t>(1, ceil_count(ratio));
    // The formula and the minimal feasible run length coincide up to float
    // rounding; settle boundary cases against the definition itself.
    while (delta_cert(target, eta_c, k) > target.delta_star) ++k;
    while (k > 1 && delta_cert(target, eta_c, k - 1) <= target.delta_star) --k;
    return k;
}

}  // namespace secpac::bounds
