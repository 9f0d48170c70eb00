#pragma once

#include <cstdint>
#include <vector>

#include "secpac/bounds.hpp"
#include "secpac/budget.hpp"
#include "secpac/channels.hpp"

namespace secpac::learner {

// Finite class over n-bit inputs, stored as explicit truth tables of length
// 2^n. The target concept is a member of the class (realizable setting).
struct HypothesisClass {
    unsigned domain_bits = 1;  // n, domain size 2^n <= 2^16
    std::vector<std::vector<std::uint8_t>> hypotheses;
    std::uint32_t concept_index = 0;
};

// Sampling distribution over the 2^n domain points.
struct InputDistribution {
    std::vector<double> weights;
};

// Outcome of one full two-phase run.
struct RunRecord {
    bool halted = false;
    std::uint64_t trials_used_train = 0;
    std::uint64_t trials_used_cert = 0;
    std::uint32_t returned_hypothesis = 0;
    double true_risk = 0.0;  // exact population risk of the returned hypothesis
    bool success = false;    // halted and true_risk <= epsilon_star
};

struct CertifyOutcome {
    bool halted = false;
    std::uint64_t trials = 0;
};

void validate(const HypothesisClass& cls);
void validate(const InputDistribution& dist, const HypothesisClass& cls);

// All 2^n parity functions x -> <a, x> mod 2, one per mask a. Distinct
// parities disagree on exactly half the domain, so under the uniform
// distribution every non-concept member has risk exactly 1/2.
HypothesisClass parity_class(unsigned domain_bits, std::uint32_t concept_index);

InputDistribution uniform_distribution(unsigned domain_bits);

// Exact risk sum_x w(x) [h(x) != c(x)] by domain enumeration.
double population_risk(std::uint32_t h, const HypothesisClass& cls,
                       const InputDistribution& dist);

// Draws m_train inputs i.i.d. from dist, labels them through the channel
// (RCN corrupts directly; BB84 transmits enough raw uses and keeps the
// first m_train sifted labels), and returns the empirical risk minimizer,
// ties broken by lowest index. Throws infeasible_error when the BB84 path
// sifts fewer than m_train labels out of the provisioned raw budget.
std::uint32_t erm_train(const HypothesisClass& cls, const InputDistribution& dist,
                        const channels::ChannelSpec& channel, std::uint64_t m_train,
                        std::uint64_t rng_seed);

// Runs validation trials against fresh noisy labels, feeding the streak
// tracker until it halts or m_cert trials are spent.
CertifyOutcome certify(std::uint32_t h, const HypothesisClass& cls,
                       const InputDistribution& dist, const channels::ChannelSpec& channel,
                       std::uint64_t m_h, std::uint64_t m_cert, std::uint64_t rng_seed);

// Full protocol: train on plan.m_train samples, certify the result within
// plan.m_cert trials, and evaluate the returned hypothesis exactly.
RunRecord run_protocol(const HypothesisClass& cls, const InputDistribution& dist,
                       const channels::ChannelSpec& channel, const budget::BudgetPlan& plan,
                       const bounds::HaltingDesign& design, std::uint64_t rng_seed);

}  // namespace secpac::learner
