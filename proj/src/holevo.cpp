#include "secpac/holevo.hpp"

#include <cmath>
#include <string>

#include "secpac/errors.hpp"

namespace secpac::holevo {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw domain_error("binary_entropy: p must lie in [0,1], got " + std::to_string(p));
    }
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

namespace {

void check_eta(const char* who, double eta) {
    if (!(eta >= 0.0 && eta < 0.5)) {
        throw domain_error(std::string(who) + ": eta must lie in [0, 0.5), got " +
                           std::to_string(eta));
    }
}

double eve_chi_value(double eta, ThresholdVariant variant) {
    const double h = binary_entropy(eta);
    if (variant == ThresholdVariant::StandardBb84) {
        return h;
    }
    const double overlap = 0.5 + std::sqrt(eta * (1.0 - eta));
    return h - binary_entropy(overlap);
}

double find_root(ThresholdVariant variant) {
    // D is 1 at eta=0 (2 for the overlap variant) and -1 at eta=1/2, and is
    // strictly decreasing in between, so plain bisection is safe.
    double lo = 0.0;
    double hi = 0.5 - 1e-12;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-9; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (info_gap(mid, variant) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double info_gap(double eta, ThresholdVariant variant) {
    check_eta("info_gap", eta);
    return (1.0 - binary_entropy(eta)) - eve_chi_value(eta, variant);
}

double eta_c(ThresholdVariant variant) {
    static const double standard = find_root(ThresholdVariant::StandardBb84);
    static const double adjusted = find_root(ThresholdVariant::OverlapAdjusted);
    return variant == ThresholdVariant::StandardBb84 ? standard : adjusted;
}

HolevoProfile holevo_profile(double eta, ThresholdVariant variant) {
    check_eta("holevo_profile", eta);
    HolevoProfile out;
    out.eta = eta;
    out.legit_info = 1.0 - binary_entropy(eta);
    out.eve_chi = eve_chi_value(eta, variant);
    out.gap = out.legit_info - out.eve_chi;
    out.admissible = eta < eta_c(variant);
    return out;
}

}  // namespace secpac::holevo
