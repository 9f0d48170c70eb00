#pragma once

#include <cstdint>
#include <string>

#include "secpac/bounds.hpp"
#include "secpac/budget.hpp"
#include "secpac/channels.hpp"
#include "secpac/holevo.hpp"
#include "secpac/stats.hpp"

namespace secpac::config {

// Everything a command needs, loadable from a JSON file with flag
// overrides on top (precedence: flags > file > defaults).
struct RunConfig {
    // design.eta_c < 0 means "use the computed threshold of
    // threshold_variant"; resolved_design() substitutes it.
    bounds::HaltingDesign design{bounds::LearningTarget{0.1, 0.05}, 15, -1.0};
    bounds::ClassCapacity capacity{16};
    channels::ChannelSpec channel{channels::ChannelKind::Rcn, 0.11, 0.0, 0.0, 0.5, 1};
    budget::TrainingSurrogate surrogate = budget::TrainingSurrogate::FiniteClass;
    std::uint64_t replicas = 2000;
    double conf = 0.95;
    std::uint64_t seed = 20260816;
    holevo::ThresholdVariant threshold_variant = holevo::ThresholdVariant::StandardBb84;
    std::string output_path;  // empty writes reports to stdout

    double alpha = 0.5;     // confidence split; 0 selects the optimizer
    double prl_xi = 0.0;    // baseline decay rate; 0 selects gamma(eps*, eta_c)
    std::uint32_t concept_index = 5;  // planted parity concept
    stats::PlSource reliability_source = stats::PlSource::Empirical;
    double holdout_fraction = 0.1;  // disclosed share of sifted bits
    double grid_step = 0.005;       // threshold curve resolution
};

// The design with the eta_c sentinel replaced by the variant's threshold.
bounds::HaltingDesign resolved_design(const RunConfig& cfg);

// The baseline decay rate with the 0 sentinel replaced by gamma(eps*, eta_c).
double resolved_xi(const RunConfig& cfg);

// Budget inputs assembled from the resolved design, capacity, surrogate
// and the channel's sift fraction.
budget::BudgetInputs budget_inputs(const RunConfig& cfg);

// The channel's declared error rate: the RCN flip rate, or the analytic
// intercept-resend QBER p + f(1-2p)/4 for BB84.
double declared_eta(const RunConfig& cfg);

// Defaults overlaid with the file's contents. Unknown keys and ill-typed
// or out-of-range values are rejected with field-level messages.
RunConfig load_file(const std::string& path);

// Full validation of a finished config (component invariants plus the
// cross-field constraints of the command surface).
void validate(const RunConfig& cfg);

}  // namespace secpac::config
