#include "persym/errors.hpp"

namespace persym {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::census: return "census";
        case Strategy::naive: return "naive";
        case Strategy::kernel: return "kernel";
    }
    return "unknown";
}

std::string CostEstimate::describe() const {
    return "enumeration budget exceeded: " + to_string(strategy) + " would visit " +
           assignment_count.str() + " assignments (budget " + budget.str() + ")";
}

NoClosedForm::NoClosedForm(int rank_index, int k)
    : std::domain_error("no closed form known for rank " + std::to_string(rank_index) +
                        " at k = " + std::to_string(k)),
      rank_index_(rank_index),
      k_(k) {}

}  // namespace persym
