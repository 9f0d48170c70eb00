#pragma once

#include <cstdint>

namespace secpac::bounds {

// Accuracy/confidence pair the learner must meet: risk at most epsilon_star
// with probability at least 1 - delta_star.
struct LearningTarget {
    double epsilon_star = 0.0;  // in [0, 1/2)
    double delta_star = 0.0;    // in (0, 1]
};

// Certification design: consecutive-success run length plus the largest
// channel noise rate the design admits.
struct HaltingDesign {
    LearningTarget target;
    std::uint64_t m_h = 1;  // required run length, >= 1
    double eta_c = 0.0;     // critical admissible noise rate, in [0, 1/2)
};

// Capacity of a finite hypothesis class.
struct ClassCapacity {
    std::uint64_t h_size = 1;  // |H| >= 1
};

// Reference single-parameter baseline: success by time m is geometric with
// per-sample rate xi, i.e. P(m) = 1 - exp(-xi m). Calibrated against the
// learning curve by requiring xi <= gamma_rate(epsilon, eta).
struct PrlBaseline {
    double xi = 0.0;  // > 0
};

void validate(const LearningTarget& target);
void validate(const HaltingDesign& design);
void validate(const ClassCapacity& cap);
void validate(const PrlBaseline& baseline);

// ceil((1/eps) ln(|H|/delta)): samples sufficient for ERM over a finite
// class on a noiseless channel. Requires epsilon_star > 0.
std::uint64_t sample_bound_noiseless(const LearningTarget& target, const ClassCapacity& cap);

// ceil(2/(eps^2 (1-2 eta)^2) ln(2|H|/delta)): samples sufficient under
// random classification noise at rate eta in [0, 1/2).
std::uint64_t sample_bound_rcn(const LearningTarget& target, const ClassCapacity& cap,
                               double eta);

// Smallest certifiable failure probability after m noisy samples,
// 2|H| exp(-gamma m). The raw value can exceed 1 for small m; decision
// logic uses the clamped one.
struct DeltaMin {
    double raw = 0.0;
    double clamped = 0.0;
};
DeltaMin delta_min(std::uint64_t m, double epsilon, double eta, const ClassCapacity& cap);

// Exponential learning rate gamma = eps^2 (1-2 eta)^2 / 2. The constants
// hidden by the asymptotic bound are fixed at this value throughout.
double gamma_rate(double epsilon, double eta);

// Learning-probability surrogate 1 - exp(-gamma m).
double p_bl(std::uint64_t m, double epsilon, double eta);

// Baseline success probability 1 - exp(-xi m).
double p_prl(std::uint64_t m, const PrlBaseline& baseline);

// Probability that one validation trial of an epsilon-risk hypothesis passes
// on an eta-noisy channel: 1 - eta - (1-2 eta) eps, always in [1/2, 1].
// epsilon may equal 1/2 here (a coin-flip hypothesis is noise invariant).
double q_obs(double epsilon, double eta);

// False-certification level of the run-of-successes test: the probability
// that a hypothesis at the risk boundary epsilon_star survives m_h
// consecutive validations, q_obs(eps*, eta)^{m_h}.
double delta_cert(const LearningTarget& target, double eta, std::uint64_t m_h);

// Minimal run length whose false-certification level meets delta_star at
// noise eta_c: smallest m_h >= 1 with delta_cert(target, eta_c, m_h)
// <= delta_star. Throws when q_obs = 1 and delta_star < 1, since no finite
// run certifies in that case.
std::uint64_t min_memory(const LearningTarget& target, double eta_c);

}  // namespace secpac::bounds
