#pragma once

#include "persym/numeric.hpp"

#include <stdexcept>
#include <string>

namespace persym {

enum class Strategy { census, naive, kernel };

std::string to_string(Strategy s);

/// Work an operation would perform before it is started.
struct CostEstimate {
    BigInt assignment_count;
    Strategy strategy = Strategy::census;
    BigInt budget;

    std::string describe() const;
};

/// Refusal to start an enumeration whose cost exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(CostEstimate cost)
        : std::runtime_error(cost.describe()), cost_(std::move(cost)) {}

    const CostEstimate& cost() const noexcept { return cost_; }

private:
    CostEstimate cost_;
};

/// Malformed input: wrong bit length, mismatched parameters, incomplete distributions.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// (rank, k) pair for which no closed form is known.
class NoClosedForm : public std::domain_error {
public:
    NoClosedForm(int rank_index, int k);

    int rank_index() const noexcept { return rank_index_; }
    int k() const noexcept { return k_; }

private:
    int rank_index_;
    int k_;
};

/// A formula table contradicts itself or yields a non-integral count.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace persym
