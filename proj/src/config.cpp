#include "secpac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "secpac/errors.hpp"

namespace secpac::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw domain_error("config: field '" + field + "' " + what);
}

void expect_object(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "must be a JSON object");
}

void reject_unknown(const json& j, const std::string& scope,
                    const std::set<std::string>& known) {
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            fail(scope.empty() ? item.key() : scope + "." + item.key(),
                 "is not a recognized key");
        }
    }
}

double get_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "must be a number");
    return j.get<double>();
}

std::uint64_t get_count(const json& j, const std::string& field) {
    if (!j.is_number_unsigned()) fail(field, "must be a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& field) {
    if (!j.is_string()) fail(field, "must be a string");
    return j.get<std::string>();
}

void apply_target(bounds::LearningTarget& target, const json& j) {
    expect_object(j, "target");
    reject_unknown(j, "target", {"epsilon_star", "delta_star"});
    if (j.contains("epsilon_star")) {
        target.epsilon_star = get_number(j["epsilon_star"], "target.epsilon_star");
    }
    if (j.contains("delta_star")) {
        target.delta_star = get_number(j["delta_star"], "target.delta_star");
    }
}

void apply_design(bounds::HaltingDesign& design, const json& j) {
    expect_object(j, "design");
    reject_unknown(j, "design", {"m_h", "eta_c"});
    if (j.contains("m_h")) design.m_h = get_count(j["m_h"], "design.m_h");
    if (j.contains("eta_c")) design.eta_c = get_number(j["eta_c"], "design.eta_c");
}

void apply_channel(channels::ChannelSpec& spec, const json& j) {
    expect_object(j, "channel");
    reject_unknown(j, "channel",
                   {"kind", "eta", "intrinsic_flip", "eavesdrop_fraction", "kappa"});
    if (j.contains("kind")) {
        const auto kind = get_string(j["kind"], "channel.kind");
        if (kind == "rcn") {
            spec.kind = channels::ChannelKind::Rcn;
        } else if (kind == "bb84") {
            spec.kind = channels::ChannelKind::Bb84;
        } else {
            fail("channel.kind", "must be \"rcn\" or \"bb84\"");
        }
    }
    if (j.contains("eta")) spec.eta = get_number(j["eta"], "channel.eta");
    if (j.contains("intrinsic_flip")) {
        spec.intrinsic_flip = get_number(j["intrinsic_flip"], "channel.intrinsic_flip");
    }
    if (j.contains("eavesdrop_fraction")) {
        spec.eavesdrop_fraction =
            get_number(j["eavesdrop_fraction"], "channel.eavesdrop_fraction");
    }
    if (j.contains("kappa")) spec.kappa = get_number(j["kappa"], "channel.kappa");
}

}  // namespace

bounds::HaltingDesign resolved_design(const RunConfig& cfg) {
    bounds::HaltingDesign design = cfg.design;
    if (design.eta_c < 0.0) design.eta_c = holevo::eta_c(cfg.threshold_variant);
    return design;
}

double resolved_xi(const RunConfig& cfg) {
    if (cfg.prl_xi > 0.0) return cfg.prl_xi;
    const auto design = resolved_design(cfg);
    return bounds::gamma_rate(design.target.epsilon_star, design.eta_c);
}

budget::BudgetInputs budget_inputs(const RunConfig& cfg) {
    budget::BudgetInputs in;
    in.design = resolved_design(cfg);
    in.cap = cfg.capacity;
    in.surrogate = cfg.surrogate;
    in.kappa = cfg.channel.kappa;
    return in;
}

double declared_eta(const RunConfig& cfg) {
    if (cfg.channel.kind == channels::ChannelKind::Rcn) return cfg.channel.eta;
    const double p = cfg.channel.intrinsic_flip;
    const double f = cfg.channel.eavesdrop_fraction;
    return p + f * (1.0 - 2.0 * p) / 4.0;
}

RunConfig load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open '" + path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& err) {
        throw domain_error("config: '" + path + "' is not valid JSON: " + err.what());
    }
    expect_object(root, "<root>");
    reject_unknown(root, "",
                   {"target", "design", "capacity", "channel", "surrogate", "replicas",
                    "conf", "seed", "threshold_variant", "output_path", "alpha", "prl_xi",
                    "concept_index", "reliability_source", "holdout_fraction", "grid_step"});

    RunConfig cfg;
    if (root.contains("target")) apply_target(cfg.design.target, root["target"]);
    if (root.contains("design")) apply_design(cfg.design, root["design"]);
    if (root.contains("capacity")) {
        const auto& j = root["capacity"];
        expect_object(j, "capacity");
        reject_unknown(j, "capacity", {"h_size"});
        if (j.contains("h_size")) {
            cfg.capacity.h_size = get_count(j["h_size"], "capacity.h_size");
        }
    }
    if (root.contains("channel")) apply_channel(cfg.channel, root["channel"]);
    if (root.contains("surrogate")) {
        const auto s = get_string(root["surrogate"], "surrogate");
        if (s == "finite_class") {
            cfg.surrogate = budget::TrainingSurrogate::FiniteClass;
        } else if (s == "exp_rate") {
            cfg.surrogate = budget::TrainingSurrogate::ExpRate;
        } else {
            fail("surrogate", "must be \"finite_class\" or \"exp_rate\"");
        }
    }
    if (root.contains("replicas")) cfg.replicas = get_count(root["replicas"], "replicas");
    if (root.contains("conf")) cfg.conf = get_number(root["conf"], "conf");
    if (root.contains("seed")) cfg.seed = get_count(root["seed"], "seed");
    if (root.contains("threshold_variant")) {
        const auto v = get_string(root["threshold_variant"], "threshold_variant");
        if (v == "standard") {
            cfg.threshold_variant = holevo::ThresholdVariant::StandardBb84;
        } else if (v == "overlap-adjusted") {
            cfg.threshold_variant = holevo::ThresholdVariant::OverlapAdjusted;
        } else {
            fail("threshold_variant", "must be \"standard\" or \"overlap-adjusted\"");
        }
    }
    if (root.contains("output_path")) {
        cfg.output_path = get_string(root["output_path"], "output_path");
    }
    if (root.contains("alpha")) cfg.alpha = get_number(root["alpha"], "alpha");
    if (root.contains("prl_xi")) cfg.prl_xi = get_number(root["prl_xi"], "prl_xi");
    if (root.contains("concept_index")) {
        cfg.concept_index =
            static_cast<std::uint32_t>(get_count(root["concept_index"], "concept_index"));
    }
    if (root.contains("reliability_source")) {
        const auto s = get_string(root["reliability_source"], "reliability_source");
        if (s == "empirical") {
            cfg.reliability_source = stats::PlSource::Empirical;
        } else if (s == "analytic") {
            cfg.reliability_source = stats::PlSource::Analytic;
        } else {
            fail("reliability_source", "must be \"empirical\" or \"analytic\"");
        }
    }
    if (root.contains("holdout_fraction")) {
        cfg.holdout_fraction = get_number(root["holdout_fraction"], "holdout_fraction");
    }
    if (root.contains("grid_step")) {
        cfg.grid_step = get_number(root["grid_step"], "grid_step");
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    bounds::validate(resolved_design(cfg));
    bounds::validate(cfg.capacity);
    channels::validate(cfg.channel);

    // the concrete learner instance is a parity class, so the class size
    // fixes the domain width and must be a power of two
    const std::uint64_t h = cfg.capacity.h_size;
    if ((h & (h - 1)) != 0 || h > (std::uint64_t{1} << 16)) {
        throw domain_error(
            "config: field 'capacity.h_size' must be a power of two at most 2^16 "
            "to instantiate the parity class");
    }
    if (cfg.concept_index >= h) {
        throw domain_error("config: field 'concept_index' must be below capacity.h_size");
    }
    if (cfg.replicas < 1) {
        throw domain_error("config: field 'replicas' must be at least 1");
    }
    if (!(cfg.conf > 0.0 && cfg.conf < 1.0)) {
        throw domain_error("config: field 'conf' must lie in (0, 1)");
    }
    if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) {
        throw domain_error(
            "config: field 'alpha' must lie in [0, 1); 0 selects the optimized split");
    }
    if (!(cfg.prl_xi >= 0.0) || !std::isfinite(cfg.prl_xi)) {
        throw domain_error(
            "config: field 'prl_xi' must be non-negative; 0 selects the design rate");
    }
    if (!(cfg.holdout_fraction > 0.0 && cfg.holdout_fraction <= 1.0)) {
        throw domain_error("config: field 'holdout_fraction' must lie in (0, 1]");
    }
    if (!(cfg.grid_step > 0.0 && cfg.grid_step < 0.1)) {
        throw domain_error("config: field 'grid_step' must lie in (0, 0.1)");
    }
}

}  // namespace secpac::config
