#pragma once

#include <cstdint>
#include <vector>

namespace secpac::channels {

enum class ChannelKind {
    Rcn,   // classical label corruption at a fixed flip rate
    Bb84,  // prepare-and-measure qubit channel with basis sifting
};

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Rcn;
    double eta = 0.0;                 // RCN flip rate, in [0, 1/2)
    double intrinsic_flip = 0.0;      // BB84 physical bit-flip rate
    double eavesdrop_fraction = 0.0;  // BB84 fraction of intercepted qubits
    double kappa = 0.5;               // expected sifted fraction
    std::uint64_t seed = 1;
};

void validate(const ChannelSpec& spec);

// Outcome of a BB84 transmission after public basis comparison. Entry i of
// the label vectors corresponds to raw use kept_indices[i], so callers can
// pair received labels back to whatever inputs produced the clean labels.
struct SiftedBatch {
    std::vector<std::uint8_t> labels_sent;
    std::vector<std::uint8_t> labels_received;
    std::vector<std::uint64_t> kept_indices;
    std::uint64_t raw_uses = 0;
    double sift_fraction = 0.0;
    double qber_estimate = 0.0;  // full-batch mismatch fraction
};

// Flips each label independently with probability eta. Deterministic for a
// fixed seed.
std::vector<std::uint8_t> rcn_corrupt(const std::vector<std::uint8_t>& clean_labels,
                                      double eta, std::uint64_t rng_seed);

// Sends one qubit per clean label: the sender encodes in a uniform basis,
// an intercept-resend eavesdropper measures a fraction eavesdrop_fraction
// of qubits in a uniform basis and resends what it saw, the channel flips
// the encoded bit with probability intrinsic_flip, and the receiver
// measures in a uniform basis. Uses with matched sender/receiver bases
// form the sifted batch; a basis-mismatched measurement yields a uniform
// bit, which is all of BB84's statistics that matter here.
SiftedBatch bb84_transmit(const std::vector<std::uint8_t>& clean_labels,
                          const ChannelSpec& spec, std::uint64_t rng_seed);

// Result of disclosing a random holdout of a sifted batch: the mismatch
// rate over the disclosed bits, and the positions (into the batch's label
// vectors) still available for learning.
struct QberEstimate {
    double estimate = 0.0;
    std::uint64_t holdout_size = 0;
    std::vector<std::uint64_t> released_positions;
};

// Estimates the error rate on round(holdout_fraction * size) disclosed
// bits, at least one; holdout_fraction may be 1 to disclose everything.
QberEstimate estimate_qber(const SiftedBatch& batch, double holdout_fraction,
                           std::uint64_t rng_seed);

}  // namespace secpac::channels
