#pragma once

#include <cstdint>

#include "secpac/bounds.hpp"

namespace secpac::budget {

// Which sufficient-training-size expression feeds the split objective:
// FiniteClass uses the capacity-dependent ln(2|H|/(alpha delta)) term,
// ExpRate the capacity-free exponential-rate surrogate ln(1/(alpha delta)).
enum class TrainingSurrogate {
    FiniteClass,
    ExpRate,
};

struct BudgetInputs {
    bounds::HaltingDesign design;
    bounds::ClassCapacity cap;
    TrainingSurrogate surrogate = TrainingSurrogate::FiniteClass;
    // Expected sifted fraction of raw channel uses; 1/2 for symmetric
    // basis choice. Only enters the raw-use conversion.
    double kappa = 0.5;
};

// Consistency: m_total = m_train + m_cert, m_cert = n_cert_blocks * m_h,
// m_raw = ceil(m_total / kappa).
struct BudgetPlan {
    double alpha = 0.0;              // confidence split actually used
    std::uint64_t m_train = 0;       // phase-1 sifted samples
    std::uint64_t n_cert_blocks = 0; // phase-2 block count
    std::uint64_t m_cert = 0;        // phase-2 sifted samples
    std::uint64_t m_total = 0;
    double kappa = 0.5;
    std::uint64_t m_raw = 0;         // provisioned raw channel uses
    double q0 = 0.0;                 // worst admissible validation pass rate
    double s0 = 0.0;                 // block-decay rate -ln(1 - q0^m_h)
    double coef_a = 0.0;             // training coefficient in the objective
    double coef_b = 0.0;             // certification coefficient m_h / s0
};

struct Feasibility {
    bool feasible = false;
    double margin = 0.0;  // delta_star - q0^m_h, negative when infeasible
};

// A design can only certify if a worst-case admissible hypothesis stream
// can fail the run test: q0^m_h <= delta_star.
Feasibility feasibility(const BudgetInputs& inputs);

// Budgets at a fixed confidence split alpha in (0, 1): the training phase
// gets failure budget alpha*delta_star, certification the remainder.
BudgetPlan budget_at(const BudgetInputs& inputs, double alpha);

// Interior minimizer coef_a / (coef_a + coef_b) of the continuous total
// budget over the split.
double alpha_star(const BudgetInputs& inputs);

struct OptimizedBudget {
    BudgetPlan plan;                // budget_at at alpha_star
    double continuous_optimum = 0;  // un-ceiled minimized total budget
};

// Optimized plan. Also evaluates the closed-form continuous optimum
// A ln(arg0/d) + B ln(1/d) + A ln(1+B/A) + B ln(1+A/B) and checks the
// integer total sits within m_h + 2 of it.
OptimizedBudget budget_opt(const BudgetInputs& inputs);

// Probability that the full two-phase run trains an adequate hypothesis
// and then halts within m_cert: 1 - delta_train - (block failure term),
// clamped below at zero. With use_exact_dp the conservative block term is
// replaced by the exact streak recursion.
double two_phase_lower_bound(const BudgetInputs& inputs, double eta_actual,
                             std::uint64_t m_train, std::uint64_t m_cert,
                             bool use_exact_dp = false);

// Raw channel uses needed for a sifted budget: ceil(m_sifted / kappa).
std::uint64_t raw_rescale(std::uint64_t m_sifted, double kappa);

}  // namespace secpac::budget
