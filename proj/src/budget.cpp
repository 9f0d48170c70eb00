#include "secpac/budget.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "secpac/errors.hpp"
#include "secpac/halting.hpp"

namespace secpac::budget {

namespace {

double q_to_the_mh(const bounds::HaltingDesign& d) {
    const double q0 = bounds::q_obs(d.target.epsilon_star, d.eta_c);
    return std::exp(static_cast<double>(d.m_h) * std::log(q0));
}

double training_coef(const BudgetInputs& inputs) {
    const double g =
        bounds::gamma_rate(inputs.design.target.epsilon_star, inputs.design.eta_c);
    if (g <= 0.0) {
        throw domain_error("budget: epsilon_star must be positive to plan a training phase");
    }
    // Both surrogates carry the same 1/gamma coefficient on ln(1/alpha);
    // they differ only in the capacity factor inside the logarithm.
    return 1.0 / g;
}

void check_kappa(double kappa) {
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw domain_error("budget: kappa must lie in (0, 1], got " + std::to_string(kappa));
    }
}

// ln of the capacity factor in the training term: 2|H| or 1.
double log_capacity_factor(const BudgetInputs& inputs) {
    if (inputs.surrogate == TrainingSurrogate::FiniteClass) {
        return std::log(2.0 * static_cast<double>(inputs.cap.h_size));
    }
    return 0.0;
}

void require_feasible(const BudgetInputs& inputs) {
    const auto f = feasibility(inputs);
    if (!f.feasible) {
        throw infeasible_error(
            "budget: design cannot certify (q0^m_h exceeds delta_star by " +
            std::to_string(-f.margin) + "); raise m_h or relax the target");
    }
}

}  // namespace

Feasibility feasibility(const BudgetInputs& inputs) {
    bounds::validate(inputs.design);
    bounds::validate(inputs.cap);
    check_kappa(inputs.kappa);
    const double qm = q_to_the_mh(inputs.design);
    Feasibility out;
    out.margin = inputs.design.target.delta_star - qm;
    out.feasible = out.margin >= 0.0;
    return out;
}

BudgetPlan budget_at(const BudgetInputs& inputs, double alpha) {
    require_feasible(inputs);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw domain_error("budget_at: alpha must lie in (0, 1), got " +
                           std::to_string(alpha));
    }
    const auto& d = inputs.design;
    const double delta = d.target.delta_star;
    const double qm = q_to_the_mh(d);

    BudgetPlan plan;
    plan.alpha = alpha;
    plan.kappa = inputs.kappa;
    plan.q0 = bounds::q_obs(d.target.epsilon_star, d.eta_c);
    plan.s0 = -std::log1p(-qm);
    plan.coef_a = training_coef(inputs);
    plan.coef_b = static_cast<double>(d.m_h) / plan.s0;

    const double train_log = log_capacity_factor(inputs) - std::log(alpha * delta);
    plan.m_train = static_cast<std::uint64_t>(std::ceil(plan.coef_a * train_log));
    const double cert_log = -std::log((1.0 - alpha) * delta);
    plan.n_cert_blocks = static_cast<std::uint64_t>(std::ceil(cert_log / plan.s0));
    plan.m_cert = plan.n_cert_blocks * d.m_h;
    plan.m_total = plan.m_train + plan.m_cert;
    plan.m_raw = raw_rescale(plan.m_total, plan.kappa);
    return plan;
}

double alpha_star(const BudgetInputs& inputs) {
    require_feasible(inputs);
    const double a = training_coef(inputs);
    const double qm = q_to_the_mh(inputs.design);
    const double s0 = -std::log1p(-qm);
    const double b = static_cast<double>(inputs.design.m_h) / s0;
    return a / (a + b);
}

OptimizedBudget budget_opt(const BudgetInputs& inputs) {
    OptimizedBudget out;
    out.plan = budget_at(inputs, alpha_star(inputs));
    const double a = out.plan.coef_a;
    const double b = out.plan.coef_b;
    const double delta = inputs.design.target.delta_star;
    out.continuous_optimum = a * (log_capacity_factor(inputs) - std::log(delta)) +
                             b * -std::log(delta) + a * std::log1p(b / a) +
                             b * std::log1p(a / b);
    const double slack = static_cast<double>(inputs.design.m_h) + 2.0;
    if (std::fabs(static_cast<double>(out.plan.m_total) - out.continuous_optimum) > slack) {
        throw std::logic_error("budget_opt: integer plan drifted past the ceiling slack");
    }
    return out;
}

double two_phase_lower_bound(const BudgetInputs& inputs, double eta_actual,
                             std::uint64_t m_train, std::uint64_t m_cert,
                             bool use_exact_dp) {
    bounds::validate(inputs.design);
    const auto& t = inputs.design.target;
    const double delta_train =
        bounds::delta_min(m_train, t.epsilon_star, eta_actual, inputs.cap).clamped;
    const double q = bounds::q_obs(t.epsilon_star, eta_actual);
    double miss_term;
    if (use_exact_dp) {
        miss_term = 1.0 - halting::halting_prob_exact(q, inputs.design.m_h, m_cert);
    } else {
        miss_term = 1.0 - halting::halting_prob_block(q, inputs.design.m_h, m_cert);
    }
    const double bound = 1.0 - delta_train - miss_term;
    return bound < 0.0 ? 0.0 : bound;
}

std::uint64_t raw_rescale(std::uint64_t m_sifted, double kappa) {
    check_kappa(kappa);
    if (m_sifted == 0) return 0;
    const double scaled = std::ceil(static_cast<double>(m_sifted) / kappa);
    return static_cast<std::uint64_t>(scaled);
}

}  // namespace secpac::budget
