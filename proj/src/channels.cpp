#include "secpac/channels.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "secpac/errors.hpp"
#include "secpac/rng.hpp"

namespace secpac::channels {

namespace {

void check_prob(const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw domain_error(std::string("ChannelSpec: ") + name + " must lie in [0,1], got " +
                           std::to_string(v));
    }
}

}  // namespace

void validate(const ChannelSpec& spec) {
    check_prob("intrinsic_flip", spec.intrinsic_flip);
    check_prob("eavesdrop_fraction", spec.eavesdrop_fraction);
    if (spec.kind == ChannelKind::Rcn && !(spec.eta >= 0.0 && spec.eta < 0.5)) {
        throw domain_error("ChannelSpec: RCN eta must lie in [0, 0.5), got " +
                           std::to_string(spec.eta));
    }
    if (!(spec.kappa > 0.0 && spec.kappa <= 1.0)) {
        throw domain_error("ChannelSpec: kappa must lie in (0, 1], got " +
                           std::to_string(spec.kappa));
    }
}

std::vector<std::uint8_t> rcn_corrupt(const std::vector<std::uint8_t>& clean_labels,
                                      double eta, std::uint64_t rng_seed) {
    if (!(eta >= 0.0 && eta < 0.5)) {
        throw domain_error("rcn_corrupt: eta must lie in [0, 0.5), got " +
                           std::to_string(eta));
    }
    Rng rng(rng_seed);
    std::vector<std::uint8_t> out(clean_labels.size());
    for (std::size_t i = 0; i < clean_labels.size(); ++i) {
        out[i] = clean_labels[i] ^ static_cast<std::uint8_t>(rng.bernoulli(eta));
    }
    return out;
}

SiftedBatch bb84_transmit(const std::vector<std::uint8_t>& clean_labels,
                          const ChannelSpec& spec, std::uint64_t rng_seed) {
    validate(spec);
    if (spec.kind != ChannelKind::Bb84) {
        throw domain_error("bb84_transmit: channel spec is not a BB84 channel");
    }
    Rng rng(rng_seed);
    SiftedBatch batch;
    batch.raw_uses = clean_labels.size();
    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < clean_labels.size(); ++i) {
        int state_bit = clean_labels[i];
        const int basis_sender = rng.bit();
        int state_basis = basis_sender;
        if (rng.bernoulli(spec.eavesdrop_fraction)) {
            const int basis_eve = rng.bit();
            if (basis_eve != state_basis) {
                // Projecting onto the other basis erases the encoded bit;
                // the resent qubit carries Eve's uniform outcome.
                state_bit = rng.bit();
                state_basis = basis_eve;
            }
        }
        if (rng.bernoulli(spec.intrinsic_flip)) {
            state_bit ^= 1;
        }
        const int basis_receiver = rng.bit();
        const int outcome = basis_receiver == state_basis ? state_bit : rng.bit();
        if (basis_receiver == basis_sender) {
            batch.labels_sent.push_back(clean_labels[i]);
            batch.labels_received.push_back(static_cast<std::uint8_t>(outcome));
            batch.kept_indices.push_back(i);
            mismatches += clean_labels[i] != outcome;
        }
    }
    const std::size_t kept = batch.labels_sent.size();
    if (batch.raw_uses > 0) {
        batch.sift_fraction = static_cast<double>(kept) / static_cast<double>(batch.raw_uses);
    }
    if (kept > 0) {
        batch.qber_estimate = static_cast<double>(mismatches) / static_cast<double>(kept);
    }
    return batch;
}

QberEstimate estimate_qber(const SiftedBatch& batch, double holdout_fraction,
                           std::uint64_t rng_seed) {
    const std::size_t n = batch.labels_sent.size();
    if (n == 0) {
        throw domain_error("estimate_qber: batch has no sifted bits");
    }
    if (!(holdout_fraction > 0.0 && holdout_fraction <= 1.0)) {
        throw domain_error("estimate_qber: holdout_fraction must lie in (0, 1], got " +
                           std::to_string(holdout_fraction));
    }
    std::size_t holdout = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n),
                         std::max(1.0, holdout_fraction * static_cast<double>(n) + 0.5)));

    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(rng_seed);
    // Partial Fisher-Yates: only the holdout prefix needs shuffling.
    for (std::size_t i = 0; i < holdout; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
    }
    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < holdout; ++i) {
        mismatches += batch.labels_sent[order[i]] != batch.labels_received[order[i]];
    }
    QberEstimate out;
    out.holdout_size = holdout;
    out.estimate = static_cast<double>(mismatches) / static_cast<double>(holdout);
    out.released_positions.assign(order.begin() + static_cast<std::ptrdiff_t>(holdout),
                                  order.end());
    std::sort(out.released_positions.begin(), out.released_positions.end());
    return out;
}

}  // namespace secpac::channels
