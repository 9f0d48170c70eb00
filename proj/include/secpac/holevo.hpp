#pragma once

namespace secpac::holevo {

// Which bound on the eavesdropper's accessible information defines the
// channel-noise threshold.
//
//   StandardBb84    chi(eta) = h(eta); the net-information gap is
//                   D(eta) = 1 - 2 h(eta), the usual one-way BB84 key-rate
//                   condition. Root near eta = 0.110028.
//   OverlapAdjusted chi(eta) = h(eta) - h(1/2 + sqrt(eta(1-eta))); keeps the
//                   entropy of the signal-overlap eigenvalue. This variant
//                   gives D(0) = 2 and a root near eta = 0.204, which is NOT
//                   consistent with the 0.11 threshold quoted for one-way
//                   BB84. It is provided for comparison; StandardBb84 is the
//                   default everywhere.
enum class ThresholdVariant {
    StandardBb84,
    OverlapAdjusted,
};

// Information balance at a given channel-noise level eta.
struct HolevoProfile {
    double eta = 0.0;
    double legit_info = 0.0;  // 1 - h(eta), receiver's information per bit
    double eve_chi = 0.0;     // bound on eavesdropper information per bit
    double gap = 0.0;         // legit_info - eve_chi
    bool admissible = false;  // eta < eta_c(variant)
};

// Binary entropy in bits, h(p) = -p log2 p - (1-p) log2 (1-p), with the
// continuous extension h(0) = h(1) = 0. Domain [0, 1].
double binary_entropy(double p);

// Net-information gap D(eta) for the chosen variant. Domain [0, 1/2).
double info_gap(double eta, ThresholdVariant variant);

// Full information profile at eta. Domain [0, 1/2).
HolevoProfile holevo_profile(double eta, ThresholdVariant variant);

// Noise threshold: the unique root of D(eta) = 0 in (0, 1/2), found by
// bisection to within 1e-9. The result is cached per variant.
double eta_c(ThresholdVariant variant);

}  // namespace secpac::holevo
