#pragma once

#include <cstdint>

#include "secpac/bounds.hpp"
#include "secpac/budget.hpp"
#include "secpac/channels.hpp"
#include "secpac/learner.hpp"

namespace secpac::stats {

// Binomial evidence for the learning probability.
struct MonteCarloSummary {
    std::uint64_t replicas = 0;
    std::uint64_t successes = 0;
    double point_estimate = 0.0;
    double lower_bound = 0.0;  // one-sided Clopper-Pearson at level conf
    double conf = 0.95;
};

// Everything needed to reproduce a learning-probability estimate.
struct Scenario {
    learner::HypothesisClass cls;
    learner::InputDistribution dist;
    channels::ChannelSpec channel;
    budget::BudgetPlan plan;
    bounds::HaltingDesign design;
};

// Which value backed the reliability gate.
enum class PlSource {
    Empirical,  // Clopper-Pearson lower bound of the Monte Carlo evidence
    Analytic,   // closed-form two-phase lower bound
};

struct DecisionReport {
    bool gate_admissibility = false;  // measured_eta <= eta_c
    bool gate_integrity = false;      // m_h >= minimal run length
    bool gate_reliability = false;    // operative_pl >= 1 - delta_star
    bool gate_baseline = false;       // operative_pl > geometric baseline
    bool accepted = false;            // conjunction of all four gates
    double measured_eta = 0.0;
    double operative_pl = 0.0;
    PlSource reliability_source = PlSource::Empirical;
    double p_prl_at_budget = 0.0;
    std::uint64_t m_h_min = 0;
    MonteCarloSummary evidence;
};

// Verdict for a single non-interactive run.
enum class Verdict {
    RejectPath,  // run failed to halt: declare the channel inadmissible
    NoEvidence,  // run halted: no rejection evidence
};

// Largest p whose Binomial(n, p) upper tail at k is still consistent with
// the data at level conf, i.e. P(X >= k | p) <= 1 - conf. Exact tail,
// log-domain, bisection. k = 0 gives 0; k = n gives (1-conf)^(1/n).
double clopper_pearson_lower(std::uint64_t k, std::uint64_t n, double conf);

// Runs `replicas` independent protocol replicas (seeded per index, so the
// result does not depend on worker count) and summarizes the success count.
MonteCarloSummary estimate_pl(const Scenario& scenario, std::uint64_t replicas, double conf,
                              std::uint64_t rng_seed);

// Four-gate compliance decision. The operative learning probability is the
// Clopper-Pearson lower bound unless the caller routes an analytic bound
// through `analytic_pl` with source = Analytic.
DecisionReport decide(const bounds::HaltingDesign& design, const budget::BudgetPlan& plan,
                      double measured_eta, const MonteCarloSummary& summary,
                      const bounds::PrlBaseline& baseline,
                      PlSource source = PlSource::Empirical, double analytic_pl = 0.0);

// A run that exhausted a planned certification budget without halting
// is itself evidence against channel admissibility.
Verdict reject_on_no_halt(const bounds::HaltingDesign& design, const budget::BudgetPlan& plan,
                          const learner::RunRecord& run);

}  // namespace secpac::stats
