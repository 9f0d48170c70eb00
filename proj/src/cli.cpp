#include "secpac/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "secpac/bounds.hpp"
#include "secpac/budget.hpp"
#include "secpac/channels.hpp"
#include "secpac/config.hpp"
#include "secpac/errors.hpp"
#include "secpac/halting.hpp"
#include "secpac/holevo.hpp"
#include "secpac/learner.hpp"
#include "secpac/rng.hpp"
#include "secpac/stats.hpp"

namespace secpac::cli {

namespace {

using nlohmann::ordered_json;

// Flag values; only flags the user actually passed override the config file.
struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replicas;
    std::optional<std::uint64_t> m_h;
    std::optional<std::uint64_t> h_size;
    std::optional<std::uint32_t> concept_index;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> eta_c;
    std::optional<double> conf;
    std::optional<double> alpha;
    std::optional<double> prl_xi;
    std::optional<double> eta;
    std::optional<double> intrinsic_flip;
    std::optional<double> eavesdrop_fraction;
    std::optional<double> kappa;
    std::optional<double> holdout;
    std::optional<double> grid_step;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::string> kind;
    std::optional<std::string> variant;
    std::optional<std::string> surrogate;
    std::optional<std::string> reliability;
};

config::RunConfig build_config(const Overrides& o) {
    config::RunConfig cfg = o.config_path.empty() ? config::RunConfig{}
                                                  : config::load_file(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.replicas) cfg.replicas = *o.replicas;
    if (o.m_h) cfg.design.m_h = *o.m_h;
    if (o.h_size) cfg.capacity.h_size = *o.h_size;
    if (o.concept_index) cfg.concept_index = *o.concept_index;
    if (o.epsilon) cfg.design.target.epsilon_star = *o.epsilon;
    if (o.delta) cfg.design.target.delta_star = *o.delta;
    if (o.eta_c) cfg.design.eta_c = *o.eta_c;
    if (o.conf) cfg.conf = *o.conf;
    if (o.alpha) cfg.alpha = *o.alpha;
    if (o.prl_xi) cfg.prl_xi = *o.prl_xi;
    if (o.eta) cfg.channel.eta = *o.eta;
    if (o.intrinsic_flip) cfg.channel.intrinsic_flip = *o.intrinsic_flip;
    if (o.eavesdrop_fraction) cfg.channel.eavesdrop_fraction = *o.eavesdrop_fraction;
    if (o.kappa) cfg.channel.kappa = *o.kappa;
    if (o.holdout) cfg.holdout_fraction = *o.holdout;
    if (o.grid_step) cfg.grid_step = *o.grid_step;
    if (o.output) cfg.output_path = *o.output;
    if (o.kind) {
        if (*o.kind == "rcn") {
            cfg.channel.kind = channels::ChannelKind::Rcn;
        } else if (*o.kind == "bb84") {
            cfg.channel.kind = channels::ChannelKind::Bb84;
        } else {
            throw domain_error("--kind must be rcn or bb84");
        }
    }
    if (o.variant) {
        if (*o.variant == "standard") {
            cfg.threshold_variant = holevo::ThresholdVariant::StandardBb84;
        } else if (*o.variant == "overlap-adjusted") {
            cfg.threshold_variant = holevo::ThresholdVariant::OverlapAdjusted;
        } else {
            throw domain_error("--variant must be standard or overlap-adjusted");
        }
    }
    if (o.surrogate) {
        if (*o.surrogate == "finite_class") {
            cfg.surrogate = budget::TrainingSurrogate::FiniteClass;
        } else if (*o.surrogate == "exp_rate") {
            cfg.surrogate = budget::TrainingSurrogate::ExpRate;
        } else {
            throw domain_error("--surrogate must be finite_class or exp_rate");
        }
    }
    if (o.reliability) {
        if (*o.reliability == "empirical") {
            cfg.reliability_source = stats::PlSource::Empirical;
        } else if (*o.reliability == "analytic") {
            cfg.reliability_source = stats::PlSource::Analytic;
        } else {
            throw domain_error("--reliability must be empirical or analytic");
        }
    }
    config::validate(cfg);
    return cfg;
}

std::string output_format(const Overrides& o, const char* fallback = "json") {
    const std::string fmt = o.format.value_or(fallback);
    if (fmt != "json" && fmt != "csv") throw domain_error("--format must be json or csv");
    return fmt;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing output file '" + path + "'");
}

void flatten(const ordered_json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& item : j.items()) {
            flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(),
                    out);
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) {
            flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
        }
    } else {
        out += prefix;
        out += ',';
        out += j.dump();
        out += '\n';
    }
}

// Reports render as pretty JSON or as flattened field,value CSV.
void emit_report(const ordered_json& j, const std::string& fmt, const std::string& path) {
    if (fmt == "json") {
        write_text(path, j.dump(2) + "\n");
        return;
    }
    std::string out = "field,value\n";
    flatten(j, "", out);
    write_text(path, out);
}

ordered_json plan_to_json(const budget::BudgetPlan& p) {
    return ordered_json{{"alpha", p.alpha},
                        {"m_train", p.m_train},
                        {"n_cert_blocks", p.n_cert_blocks},
                        {"m_cert", p.m_cert},
                        {"m_total", p.m_total},
                        {"kappa", p.kappa},
                        {"m_raw", p.m_raw},
                        {"q0", p.q0},
                        {"s0", p.s0},
                        {"coef_a", p.coef_a},
                        {"coef_b", p.coef_b}};
}

ordered_json design_to_json(const config::RunConfig& cfg) {
    const auto design = config::resolved_design(cfg);
    return ordered_json{
        {"epsilon_star", design.target.epsilon_star},
        {"delta_star", design.target.delta_star},
        {"m_h", design.m_h},
        {"eta_c", design.eta_c},
        {"h_size", cfg.capacity.h_size},
        {"surrogate", cfg.surrogate == budget::TrainingSurrogate::FiniteClass
                          ? "finite_class"
                          : "exp_rate"},
        {"kappa", cfg.channel.kappa}};
}

std::optional<std::uint64_t> min_memory_of(const bounds::HaltingDesign& design) {
    try {
        return bounds::min_memory(design.target, design.eta_c);
    } catch (const domain_error&) {
        return std::nullopt;  // no finite run length works at q_obs = 1
    }
}

int infeasible_exit(const budget::Feasibility& feas, const budget::BudgetInputs& in) {
    std::cerr << "infeasible design: the worst admissible hypothesis halts a single run "
                 "with probability q0^m_h > delta_star (margin "
              << num(feas.margin) << ", delta_star " << num(in.design.target.delta_star)
              << ", m_h " << in.design.m_h;
    if (const auto mh_min = min_memory_of(in.design)) {
        std::cerr << ", minimal feasible m_h " << *mh_min;
    }
    std::cerr << ")\n";
    return 3;
}

// The concrete learning instance every simulation runs on.
struct Instance {
    learner::HypothesisClass cls;
    learner::InputDistribution dist;
};

Instance make_instance(const config::RunConfig& cfg) {
    if (cfg.capacity.h_size < 2) {
        throw domain_error(
            "capacity.h_size must be at least 2 to instantiate the parity class");
    }
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << bits) < cfg.capacity.h_size) ++bits;
    Instance inst;
    inst.cls = learner::parity_class(bits, cfg.concept_index);
    inst.dist = learner::uniform_distribution(bits);
    return inst;
}

std::vector<std::uint8_t> random_bits(std::uint64_t count, std::uint64_t seed) {
    std::vector<std::uint8_t> bits(count);
    Rng rng(seed);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

budget::BudgetPlan select_plan(const config::RunConfig& cfg,
                               const budget::BudgetInputs& in) {
    if (cfg.alpha > 0.0) return budget::budget_at(in, cfg.alpha);
    return budget::budget_opt(in).plan;
}

ordered_json decision_to_json(const stats::DecisionReport& rep, const config::RunConfig& cfg,
                              const budget::BudgetPlan& plan, double xi) {
    return ordered_json{
        {"accepted", rep.accepted},
        {"gates",
         {{"admissibility", rep.gate_admissibility},
          {"integrity", rep.gate_integrity},
          {"reliability", rep.gate_reliability},
          {"baseline", rep.gate_baseline}}},
        {"measured_eta", rep.measured_eta},
        {"eta_c", config::resolved_design(cfg).eta_c},
        {"m_h", config::resolved_design(cfg).m_h},
        {"m_h_min", rep.m_h_min},
        {"operative_pl", rep.operative_pl},
        {"reliability_source",
         rep.reliability_source == stats::PlSource::Empirical ? "empirical" : "analytic"},
        {"required_pl", 1.0 - config::resolved_design(cfg).target.delta_star},
        {"prl_xi", xi},
        {"p_prl_at_budget", rep.p_prl_at_budget},
        {"evidence",
         {{"replicas", rep.evidence.replicas},
          {"successes", rep.evidence.successes},
          {"point_estimate", rep.evidence.point_estimate},
          {"lower_bound", rep.evidence.lower_bound},
          {"conf", rep.evidence.conf}}},
        {"plan", plan_to_json(plan)},
        {"seed", cfg.seed}};
}

int cmd_threshold(const Overrides& o) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o, "csv");  // the curve is tabular by nature
    const double root = holevo::eta_c(cfg.threshold_variant);
    const auto rows =
        static_cast<std::uint64_t>(std::floor(0.5 / cfg.grid_step));

    if (fmt == "csv") {
        std::string csv = "eta,legit_info,eve_chi,gap\n";
        for (std::uint64_t i = 0; i < rows; ++i) {
            const double eta = static_cast<double>(i) * cfg.grid_step;
            const auto prof = holevo::holevo_profile(eta, cfg.threshold_variant);
            csv += num(prof.eta) + "," + num(prof.legit_info) + "," + num(prof.eve_chi) +
                   "," + num(prof.gap) + "\n";
        }
        write_text(cfg.output_path, csv);
    } else {
        ordered_json curve = ordered_json::array();
        for (std::uint64_t i = 0; i < rows; ++i) {
            const double eta = static_cast<double>(i) * cfg.grid_step;
            const auto prof = holevo::holevo_profile(eta, cfg.threshold_variant);
            curve.push_back(ordered_json{{"eta", prof.eta},
                                         {"legit_info", prof.legit_info},
                                         {"eve_chi", prof.eve_chi},
                                         {"gap", prof.gap}});
        }
        const ordered_json out{
            {"variant", cfg.threshold_variant == holevo::ThresholdVariant::StandardBb84
                            ? "standard"
                            : "overlap-adjusted"},
            {"eta_c", root},
            {"rows", rows},
            {"curve", curve}};
        write_text(cfg.output_path, out.dump(2) + "\n");
    }
    std::printf("eta_c %.10f\n", root);
    return 0;
}

int cmd_plan(const Overrides& o, const std::string& sweep_path) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o);
    const auto in = config::budget_inputs(cfg);
    const auto feas = budget::feasibility(in);
    if (!feas.feasible) return infeasible_exit(feas, in);

    const double a_star = budget::alpha_star(in);
    const auto fixed = budget::budget_at(in, cfg.alpha > 0.0 ? cfg.alpha : a_star);
    const auto opt = budget::budget_opt(in);
    const auto mh_min = min_memory_of(in.design);

    ordered_json out{{"design", design_to_json(cfg)},
                     {"m_h_min", mh_min ? ordered_json(*mh_min) : ordered_json(nullptr)},
                     {"feasibility",
                      {{"feasible", feas.feasible}, {"margin", feas.margin}}},
                     {"alpha_star", a_star},
                     {"at_alpha", plan_to_json(fixed)},
                     {"optimized", plan_to_json(opt.plan)},
                     {"continuous_optimum", opt.continuous_optimum}};
    emit_report(out, fmt, cfg.output_path);

    if (!sweep_path.empty()) {
        std::string csv = "alpha,m_train,m_cert,m_total\n";
        for (int i = 1; i <= 99; ++i) {
            const double a = static_cast<double>(i) / 100.0;
            const auto p = budget::budget_at(in, a);
            csv += num(a) + "," + std::to_string(p.m_train) + "," +
                   std::to_string(p.m_cert) + "," + std::to_string(p.m_total) + "\n";
        }
        write_text(sweep_path, csv);
    }
    return 0;
}

int cmd_halting(const Overrides& o, const std::optional<double>& q_flag,
                const std::optional<std::uint64_t>& m_cert_flag,
                const std::string& trace_path) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o);
    const auto design = config::resolved_design(cfg);
    const double q =
        q_flag ? *q_flag : bounds::q_obs(design.target.epsilon_star, design.eta_c);

    std::uint64_t m_cert = 0;
    if (m_cert_flag) {
        m_cert = *m_cert_flag;
    } else {
        // default to the certification budget the design would be granted
        const auto in = config::budget_inputs(cfg);
        const auto feas = budget::feasibility(in);
        if (!feas.feasible) return infeasible_exit(feas, in);
        m_cert = select_plan(cfg, in).m_cert;
    }

    const ordered_json out{{"q", q},
                           {"m_h", design.m_h},
                           {"m_cert", m_cert},
                           {"mean_run_length", halting::run_length_mean(q, design.m_h)},
                           {"block_bound", halting::halting_prob_block(q, design.m_h, m_cert)},
                           {"exact", halting::halting_prob_exact(q, design.m_h, m_cert)}};
    emit_report(out, fmt, cfg.output_path);

    if (!trace_path.empty()) {
        const auto trace = halting::halting_trace(q, design.m_h, m_cert);
        std::string csv = "t,halting_prob\n";
        for (std::size_t t = 0; t < trace.size(); ++t) {
            csv += std::to_string(t) + "," + num(trace[t]) + "\n";
        }
        write_text(trace_path, csv);
    }
    return 0;
}

int cmd_qber(const Overrides& o, std::uint64_t raw_uses) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o);
    if (cfg.channel.kind != channels::ChannelKind::Bb84) {
        throw domain_error("qber requires channel.kind = bb84");
    }
    if (raw_uses < 1) throw domain_error("--raw-uses must be at least 1");

    const auto labels = random_bits(raw_uses, derive_seed(cfg.seed, 0xA0));
    const auto batch = channels::bb84_transmit(labels, cfg.channel,
                                               derive_seed(cfg.seed, 0xA1));
    if (batch.labels_sent.empty()) {
        throw std::runtime_error("sifting kept no raw uses; increase --raw-uses");
    }
    const auto est = channels::estimate_qber(batch, cfg.holdout_fraction,
                                             derive_seed(cfg.seed, 0xA2));
    const ordered_json out{{"raw_uses", batch.raw_uses},
                           {"sifted", batch.labels_sent.size()},
                           {"sift_fraction", batch.sift_fraction},
                           {"qber_full_batch", batch.qber_estimate},
                           {"qber_holdout", est.estimate},
                           {"holdout_size", est.holdout_size},
                           {"released", est.released_positions.size()},
                           {"declared_eta", config::declared_eta(cfg)},
                           {"seed", cfg.seed}};
    emit_report(out, fmt, cfg.output_path);
    return 0;
}

// Measures the channel error rate the way a deployment would: BB84 gets a
// dedicated estimation batch with a disclosed holdout, RCN is declared.
double measure_eta(const config::RunConfig& cfg, std::uint64_t estimation_raw,
                   ordered_json* audit) {
    if (cfg.channel.kind == channels::ChannelKind::Rcn) {
        return cfg.channel.eta;
    }
    const auto labels = random_bits(estimation_raw, derive_seed(cfg.seed, 0xB0));
    const auto batch = channels::bb84_transmit(labels, cfg.channel,
                                               derive_seed(cfg.seed, 0xB1));
    if (batch.labels_sent.empty()) {
        throw std::runtime_error("estimation batch sifted to nothing; increase --estimation-raw");
    }
    const auto est = channels::estimate_qber(batch, cfg.holdout_fraction,
                                             derive_seed(cfg.seed, 0xB2));
    if (audit) {
        *audit = ordered_json{{"estimation_raw", estimation_raw},
                              {"sifted", batch.labels_sent.size()},
                              {"holdout_size", est.holdout_size},
                              {"qber_holdout", est.estimate}};
    }
    return est.estimate;
}

// Analytic reliability backing; beyond the affine-map domain there is no
// guarantee at all, which the zero bound encodes.
double analytic_pl(const budget::BudgetInputs& in, const budget::BudgetPlan& plan,
                   double measured_eta) {
    if (!(measured_eta < 0.5)) return 0.0;
    return budget::two_phase_lower_bound(in, measured_eta, plan.m_train, plan.m_cert);
}

int cmd_simulate(const Overrides& o, std::uint64_t estimation_raw) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o);
    const auto in = config::budget_inputs(cfg);
    const auto feas = budget::feasibility(in);
    if (!feas.feasible) return infeasible_exit(feas, in);
    const auto plan = select_plan(cfg, in);

    ordered_json qber_audit = nullptr;
    const double measured = measure_eta(cfg, estimation_raw, &qber_audit);

    const auto inst = make_instance(cfg);
    stats::Scenario sc;
    sc.cls = inst.cls;
    sc.dist = inst.dist;
    sc.channel = cfg.channel;
    sc.plan = plan;
    sc.design = in.design;
    const auto summary =
        stats::estimate_pl(sc, cfg.replicas, cfg.conf, derive_seed(cfg.seed, 0xC0));

    const double xi = config::resolved_xi(cfg);
    const bounds::PrlBaseline baseline{xi};
    const double analytic = cfg.reliability_source == stats::PlSource::Analytic
                                ? analytic_pl(in, plan, measured)
                                : 0.0;
    const auto rep = stats::decide(in.design, plan, measured, summary, baseline,
                                   cfg.reliability_source, analytic);

    ordered_json out = decision_to_json(rep, cfg, plan, xi);
    out["qber_estimation"] = qber_audit;
    emit_report(out, fmt, cfg.output_path);
    return rep.accepted ? 0 : 2;
}

int cmd_decide(const Overrides& o, const std::optional<double>& measured_flag,
               const std::optional<std::uint64_t>& successes_flag,
               const std::optional<std::uint64_t>& evidence_replicas, bool analytic_flag) {
    const auto cfg = build_config(o);
    const std::string fmt = output_format(o);
    const auto in = config::budget_inputs(cfg);
    const auto feas = budget::feasibility(in);
    if (!feas.feasible) return infeasible_exit(feas, in);
    const auto plan = select_plan(cfg, in);
    const double measured = measured_flag ? *measured_flag : config::declared_eta(cfg);

    if (analytic_flag && successes_flag) {
        throw domain_error("decide takes either --successes or --analytic, not both");
    }

    stats::MonteCarloSummary summary;
    stats::PlSource source = stats::PlSource::Empirical;
    double analytic = 0.0;
    if (successes_flag) {
        const std::uint64_t n = evidence_replicas.value_or(cfg.replicas);
        summary.replicas = n;
        summary.successes = *successes_flag;
        summary.conf = cfg.conf;
        summary.point_estimate =
            static_cast<double>(summary.successes) / static_cast<double>(n);
        summary.lower_bound =
            stats::clopper_pearson_lower(summary.successes, n, cfg.conf);
    } else if (analytic_flag || cfg.reliability_source == stats::PlSource::Analytic) {
        source = stats::PlSource::Analytic;
        analytic = analytic_pl(in, plan, measured);
    } else {
        throw domain_error("decide requires --successes (with --evidence-replicas) or --analytic");
    }

    const double xi = config::resolved_xi(cfg);
    const bounds::PrlBaseline baseline{xi};
    const auto rep =
        stats::decide(in.design, plan, measured, summary, baseline, source, analytic);
    emit_report(decision_to_json(rep, cfg, plan, xi), fmt, cfg.output_path);
    return rep.accepted ? 0 : 2;
}

void add_common_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--seed", o.seed, "master RNG seed");
    sub->add_option("--output", o.output, "report destination (default stdout)");
    sub->add_option("--replicas", o.replicas, "Monte Carlo replica count");
    sub->add_option("--format", o.format, "report format: json or csv");
    sub->add_option("--epsilon", o.epsilon, "target risk epsilon_star");
    sub->add_option("--delta", o.delta, "target failure budget delta_star");
    sub->add_option("--m-h", o.m_h, "required halting run length");
    sub->add_option("--eta-c", o.eta_c, "admissibility threshold override");
    sub->add_option("--h-size", o.h_size, "hypothesis class size");
    sub->add_option("--concept", o.concept_index, "planted concept index");
    sub->add_option("--conf", o.conf, "confidence level for the lower bound");
    sub->add_option("--alpha", o.alpha, "confidence split; 0 optimizes");
    sub->add_option("--prl-xi", o.prl_xi, "baseline decay rate; 0 uses the design rate");
    sub->add_option("--kind", o.kind, "channel kind: rcn or bb84");
    sub->add_option("--eta", o.eta, "RCN flip rate");
    sub->add_option("--intrinsic-flip", o.intrinsic_flip, "BB84 physical flip rate");
    sub->add_option("--eavesdrop-fraction", o.eavesdrop_fraction,
                    "BB84 intercepted fraction");
    sub->add_option("--kappa", o.kappa, "expected sifted fraction");
    sub->add_option("--holdout", o.holdout, "disclosed share of sifted bits");
    sub->add_option("--grid-step", o.grid_step, "threshold curve resolution");
    sub->add_option("--variant", o.variant,
                    "threshold variant: standard or overlap-adjusted");
    sub->add_option("--surrogate", o.surrogate,
                    "training surrogate: finite_class or exp_rate");
    sub->add_option("--reliability", o.reliability,
                    "reliability gate backing: empirical or analytic");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"secure-PAC planning and verification toolkit"};
    app.require_subcommand(1);

    Overrides o;
    int code = 0;

    auto* threshold = app.add_subcommand(
        "threshold", "information-gap curve and the admissibility threshold");
    add_common_flags(threshold, o);
    threshold->callback([&] { code = cmd_threshold(o); });

    std::string sweep_path;
    auto* plan = app.add_subcommand("plan", "two-phase budgets for the configured design");
    add_common_flags(plan, o);
    plan->add_option("--sweep-alpha", sweep_path, "CSV of budgets over a 99-point split grid");
    plan->callback([&] { code = cmd_plan(o, sweep_path); });

    std::optional<double> q_flag;
    std::optional<std::uint64_t> m_cert_flag;
    std::string trace_path;
    auto* halting = app.add_subcommand("halting", "run-length statistics of the stopping rule");
    add_common_flags(halting, o);
    halting->add_option("--q", q_flag, "single-trial pass probability (default q0 of the design)");
    halting->add_option("--m-cert", m_cert_flag, "certification trial budget (default planned)");
    halting->add_option("--trace", trace_path, "CSV of halting probability after each trial");
    halting->callback([&] { code = cmd_halting(o, q_flag, m_cert_flag, trace_path); });

    std::uint64_t raw_uses = 100000;
    auto* qber = app.add_subcommand("qber", "BB84 sifting and error-rate estimation");
    add_common_flags(qber, o);
    qber->add_option("--raw-uses", raw_uses, "raw channel uses to transmit");
    qber->callback([&] { code = cmd_qber(o, raw_uses); });

    std::uint64_t estimation_raw = 20000;
    auto* simulate = app.add_subcommand(
        "simulate", "full pipeline: measure, learn, certify, decide");
    add_common_flags(simulate, o);
    simulate->add_option("--estimation-raw", estimation_raw,
                         "raw uses for the error-rate estimation batch");
    simulate->callback([&] { code = cmd_simulate(o, estimation_raw); });

    std::optional<double> measured_flag;
    std::optional<std::uint64_t> successes_flag;
    std::optional<std::uint64_t> evidence_replicas;
    bool analytic_flag = false;
    auto* decide = app.add_subcommand("decide", "four-gate decision from given evidence");
    add_common_flags(decide, o);
    decide->add_option("--measured-eta", measured_flag,
                       "measured channel error rate (default declared)");
    decide->add_option("--successes", successes_flag, "observed protocol successes");
    decide->add_option("--evidence-replicas", evidence_replicas,
                       "replica count behind --successes (default --replicas)");
    decide->add_flag("--analytic", analytic_flag, "back the reliability gate analytically");
    decide->callback([&] {
        code = cmd_decide(o, measured_flag, successes_flag, evidence_replicas, analytic_flag);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int parse_code = app.exit(e);
        return parse_code == 0 ? 0 : 4;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return code;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("secpac");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace secpac::cli
