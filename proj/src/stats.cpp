#include "secpac/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "secpac/errors.hpp"
#include "secpac/rng.hpp"

namespace secpac::stats {

namespace {

// log P(X >= k) for X ~ Binomial(n, p), summed in the log domain so that
// tails far below double range still compare correctly during bisection.
double log_binomial_upper_tail(std::uint64_t k, std::uint64_t n, double p) {
    if (k == 0) return 0.0;
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return 0.0;
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<double> terms;
    terms.reserve(n - k + 1);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::uint64_t j = k; j <= n; ++j) {
        const double lt = lgn - std::lgamma(static_cast<double>(j) + 1.0) -
                          std::lgamma(static_cast<double>(n - j) + 1.0) +
                          static_cast<double>(j) * lp + static_cast<double>(n - j) * lq;
        terms.push_back(lt);
        peak = std::max(peak, lt);
    }
    double acc = 0.0;
    for (double lt : terms) acc += std::exp(lt - peak);
    return peak + std::log(acc);
}

}  // namespace

double clopper_pearson_lower(std::uint64_t k, std::uint64_t n, double conf) {
    if (n == 0) throw domain_error("clopper_pearson_lower: n must be positive");
    if (k > n) throw domain_error("clopper_pearson_lower: k exceeds n");
    if (!(conf > 0.0 && conf < 1.0)) {
        throw domain_error("clopper_pearson_lower: conf must lie in (0, 1)");
    }
    if (k == 0) return 0.0;
    if (k == n) return std::pow(1.0 - conf, 1.0 / static_cast<double>(n));
    const double log_alpha = std::log(1.0 - conf);
    // The tail is strictly increasing in p, so the bound is the unique root
    // of log_tail(p) = log(1 - conf). Keep lo on the admissible side.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_binomial_upper_tail(k, n, mid) <= log_alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

MonteCarloSummary estimate_pl(const Scenario& scenario, std::uint64_t replicas, double conf,
                              std::uint64_t rng_seed) {
    if (replicas == 0) throw domain_error("estimate_pl: replicas must be positive");
    if (!(conf > 0.0 && conf < 1.0)) throw domain_error("estimate_pl: conf must lie in (0, 1)");
    learner::validate(scenario.cls);
    learner::validate(scenario.dist, scenario.cls);
    channels::validate(scenario.channel);
    bounds::validate(scenario.design);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, replicas));

    // Replica r always consumes the seed derive_seed(rng_seed, r), so the
    // success count is invariant under the worker partition.
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    auto body = [&](unsigned w) {
        try {
            std::uint64_t local = 0;
            for (std::uint64_t r = w; r < replicas; r += workers) {
                const learner::RunRecord rec =
                    learner::run_protocol(scenario.cls, scenario.dist, scenario.channel,
                                          scenario.plan, scenario.design,
                                          derive_seed(rng_seed, r));
                if (rec.success) ++local;
            }
            partial[w] = local;
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    std::uint64_t successes = 0;
    for (std::uint64_t c : partial) successes += c;

    MonteCarloSummary out;
    out.replicas = replicas;
    out.successes = successes;
    out.point_estimate = static_cast<double>(successes) / static_cast<double>(replicas);
    out.lower_bound = clopper_pearson_lower(successes, replicas, conf);
    out.conf = conf;
    return out;
}

DecisionReport decide(const bounds::HaltingDesign& design, const budget::BudgetPlan& plan,
                      double measured_eta, const MonteCarloSummary& summary,
                      const bounds::PrlBaseline& baseline,
                      PlSource source, double analytic_pl) {
    bounds::validate(design);
    bounds::validate(baseline);
    // A measured error rate is a probability; anything at or above eta_c
    // simply fails the admissibility gate, it is not an input error.
    if (!(measured_eta >= 0.0 && measured_eta <= 1.0)) {
        throw domain_error("decide: measured_eta must lie in [0, 1]");
    }
    if (source == PlSource::Analytic && !(analytic_pl >= 0.0 && analytic_pl <= 1.0)) {
        throw domain_error("decide: analytic_pl must lie in [0, 1]");
    }

    DecisionReport rep;
    rep.measured_eta = measured_eta;
    rep.reliability_source = source;
    rep.evidence = summary;
    rep.operative_pl =
        source == PlSource::Empirical ? summary.lower_bound : analytic_pl;

    rep.gate_admissibility = measured_eta <= design.eta_c;
    try {
        rep.m_h_min = bounds::min_memory(design.target, design.eta_c);
        rep.gate_integrity = design.m_h >= rep.m_h_min;
    } catch (const domain_error&) {
        // No finite run length certifies a perfectly quiet observable.
        rep.m_h_min = 0;
        rep.gate_integrity = false;
    }
    rep.gate_reliability = rep.operative_pl >= 1.0 - design.target.delta_star;
    rep.p_prl_at_budget = bounds::p_prl(plan.m_total, baseline);
    rep.gate_baseline = rep.operative_pl > rep.p_prl_at_budget;
    rep.accepted = rep.gate_admissibility && rep.gate_integrity && rep.gate_reliability &&
                   rep.gate_baseline;
    return rep;
}

Verdict reject_on_no_halt(const bounds::HaltingDesign& design, const budget::BudgetPlan& plan,
                          const learner::RunRecord& run) {
    bounds::validate(design);
    (void)plan;
    return run.halted ? Verdict::NoEvidence : Verdict::RejectPath;
}

}  // namespace secpac::stats
