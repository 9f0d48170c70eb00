#pragma once

#include <stdexcept>
#include <string>

namespace secpac {

// Thrown when a caller passes a value outside an operation's stated domain
// (probabilities out of range, empty hypothesis class, zero kappa, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when the requested design cannot work for structural reasons even
// with valid inputs, e.g. q_obs = 1 so no finite run length certifies, or a
// transmission produced too few sifted bits to cover a fixed training budget.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secpac
