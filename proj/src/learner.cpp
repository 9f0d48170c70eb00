#include "secpac/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "secpac/errors.hpp"
#include "secpac/halting.hpp"
#include "secpac/rng.hpp"

namespace secpac::learner {

namespace {

// Inverse-CDF sampler over the domain points.
class DomainSampler {
public:
    explicit DomainSampler(const InputDistribution& dist) : cdf_(dist.weights) {
        std::partial_sum(cdf_.begin(), cdf_.end(), cdf_.begin());
        cdf_.back() = 1.0;  // guard against accumulated rounding at the top
    }

    std::uint32_t draw(Rng& rng) {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), rng.uniform());
        return static_cast<std::uint32_t>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

struct LabeledSample {
    std::vector<std::uint32_t> xs;
    std::vector<std::uint8_t> ys;
};

// Draws count inputs and produces their noisy labels through the channel.
// BB84 provisions enough raw uses that a sift shortfall needs a deviation
// of roughly ten binomial sigmas, then fails hard if one still happens, so
// in practice a shortfall means kappa was misdeclared.
LabeledSample draw_labeled(const HypothesisClass& cls, const InputDistribution& dist,
                           const channels::ChannelSpec& channel, std::uint64_t count,
                           std::uint64_t rng_seed) {
    const auto& truth = cls.hypotheses[cls.concept_index];
    DomainSampler sampler(dist);
    Rng xrng(derive_seed(rng_seed, 0x58));
    const std::uint64_t label_seed = derive_seed(rng_seed, 0x59);

    LabeledSample out;
    if (channel.kind == channels::ChannelKind::Rcn) {
        out.xs.resize(count);
        std::vector<std::uint8_t> clean(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            out.xs[i] = sampler.draw(xrng);
            clean[i] = truth[out.xs[i]];
        }
        out.ys = channels::rcn_corrupt(clean, channel.eta, label_seed);
        return out;
    }

    const std::uint64_t margin =
        count == 0 ? 0
                   : 16 + static_cast<std::uint64_t>(
                              std::ceil(8.0 * std::sqrt(static_cast<double>(count))));
    const std::uint64_t raw =
        count == 0 ? 0 : budget::raw_rescale(count + margin, channel.kappa);
    std::vector<std::uint32_t> raw_xs(raw);
    std::vector<std::uint8_t> clean(raw);
    for (std::uint64_t i = 0; i < raw; ++i) {
        raw_xs[i] = sampler.draw(xrng);
        clean[i] = truth[raw_xs[i]];
    }
    const auto batch = channels::bb84_transmit(clean, channel, label_seed);
    if (batch.labels_received.size() < count) {
        throw infeasible_error(
            "draw_labeled: sifting yielded " + std::to_string(batch.labels_received.size()) +
            " of the " + std::to_string(count) +
            " samples required; raise the raw provision or kappa");
    }
    out.xs.resize(count);
    out.ys.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        out.xs[i] = raw_xs[batch.kept_indices[i]];
        out.ys[i] = batch.labels_received[i];
    }
    return out;
}

}  // namespace

void validate(const HypothesisClass& cls) {
    if (cls.domain_bits < 1 || cls.domain_bits > 16) {
        throw domain_error("HypothesisClass: domain_bits must lie in [1, 16]");
    }
    if (cls.hypotheses.empty()) {
        throw domain_error("HypothesisClass: needs at least one hypothesis");
    }
    const std::size_t domain = std::size_t{1} << cls.domain_bits;
    for (const auto& h : cls.hypotheses) {
        if (h.size() != domain) {
            throw domain_error("HypothesisClass: truth table size does not match 2^n");
        }
    }
    if (cls.concept_index >= cls.hypotheses.size()) {
        throw domain_error("HypothesisClass: concept_index out of range");
    }
}

void validate(const InputDistribution& dist, const HypothesisClass& cls) {
    const std::size_t domain = std::size_t{1} << cls.domain_bits;
    if (dist.weights.size() != domain) {
        throw domain_error("InputDistribution: weight count does not match 2^n");
    }
    double sum = 0.0;
    for (double w : dist.weights) {
        if (w < 0.0) {
            throw domain_error("InputDistribution: negative weight");
        }
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw domain_error("InputDistribution: weights sum to " + std::to_string(sum));
    }
}

HypothesisClass parity_class(unsigned domain_bits, std::uint32_t concept_index) {
    HypothesisClass cls;
    cls.domain_bits = domain_bits;
    cls.concept_index = concept_index;
    const std::uint32_t domain = 1u << domain_bits;
    cls.hypotheses.resize(domain);
    for (std::uint32_t mask = 0; mask < domain; ++mask) {
        auto& table = cls.hypotheses[mask];
        table.resize(domain);
        for (std::uint32_t x = 0; x < domain; ++x) {
            table[x] = static_cast<std::uint8_t>(__builtin_popcount(mask & x) & 1);
        }
    }
    validate(cls);
    return cls;
}

InputDistribution uniform_distribution(unsigned domain_bits) {
    const std::size_t domain = std::size_t{1} << domain_bits;
    InputDistribution dist;
    dist.weights.assign(domain, 1.0 / static_cast<double>(domain));
    return dist;
}

double population_risk(std::uint32_t h, const HypothesisClass& cls,
                       const InputDistribution& dist) {
    validate(cls);
    validate(dist, cls);
    if (h >= cls.hypotheses.size()) {
        throw domain_error("population_risk: hypothesis index out of range");
    }
    const auto& ht = cls.hypotheses[h];
    const auto& ct = cls.hypotheses[cls.concept_index];
    double risk = 0.0;
    for (std::size_t x = 0; x < ht.size(); ++x) {
        if (ht[x] != ct[x]) risk += dist.weights[x];
    }
    return risk;
}

std::uint32_t erm_train(const HypothesisClass& cls, const InputDistribution& dist,
                        const channels::ChannelSpec& channel, std::uint64_t m_train,
                        std::uint64_t rng_seed) {
    validate(cls);
    validate(dist, cls);
    channels::validate(channel);
    const auto sample = draw_labeled(cls, dist, channel, m_train, rng_seed);

    // Histogram of labels per domain point, then one pass per hypothesis.
    const std::size_t domain = std::size_t{1} << cls.domain_bits;
    std::vector<std::uint64_t> zeros(domain, 0), ones(domain, 0);
    for (std::uint64_t i = 0; i < m_train; ++i) {
        (sample.ys[i] ? ones : zeros)[sample.xs[i]] += 1;
    }
    std::uint32_t best = 0;
    std::uint64_t best_mismatch = ~std::uint64_t{0};
    for (std::uint32_t h = 0; h < cls.hypotheses.size(); ++h) {
        const auto& table = cls.hypotheses[h];
        std::uint64_t mismatch = 0;
        for (std::size_t x = 0; x < domain; ++x) {
            mismatch += table[x] ? zeros[x] : ones[x];
        }
        if (mismatch < best_mismatch) {
            best_mismatch = mismatch;
            best = h;
        }
    }
    return best;
}

CertifyOutcome certify(std::uint32_t h, const HypothesisClass& cls,
                       const InputDistribution& dist, const channels::ChannelSpec& channel,
                       std::uint64_t m_h, std::uint64_t m_cert, std::uint64_t rng_seed) {
    validate(cls);
    validate(dist, cls);
    channels::validate(channel);
    if (h >= cls.hypotheses.size()) {
        throw domain_error("certify: hypothesis index out of range");
    }
    const auto sample = draw_labeled(cls, dist, channel, m_cert, rng_seed);
    const auto& table = cls.hypotheses[h];
    halting::StreakTracker tracker;
    tracker.m_h = m_h;
    for (std::uint64_t i = 0; i < m_cert && !tracker.halted; ++i) {
        tracker = halting::tracker_step(tracker, table[sample.xs[i]] == sample.ys[i]);
    }
    return CertifyOutcome{tracker.halted, tracker.trials_consumed};
}

RunRecord run_protocol(const HypothesisClass& cls, const InputDistribution& dist,
                       const channels::ChannelSpec& channel, const budget::BudgetPlan& plan,
                       const bounds::HaltingDesign& design, std::uint64_t rng_seed) {
    bounds::validate(design);
    if (plan.n_cert_blocks > 0 && plan.m_cert != plan.n_cert_blocks * design.m_h) {
        throw domain_error("run_protocol: plan block structure does not match design.m_h");
    }
    RunRecord rec;
    rec.returned_hypothesis =
        erm_train(cls, dist, channel, plan.m_train, derive_seed(rng_seed, 1));
    rec.trials_used_train = plan.m_train;
    const auto cert = certify(rec.returned_hypothesis, cls, dist, channel, design.m_h,
                              plan.m_cert, derive_seed(rng_seed, 2));
    rec.halted = cert.halted;
    rec.trials_used_cert = cert.trials;
    rec.true_risk = population_risk(rec.returned_hypothesis, cls, dist);
    rec.success = rec.halted && rec.true_risk <= design.target.epsilon_star;
    return rec;
}

}  // namespace secpac::learner
