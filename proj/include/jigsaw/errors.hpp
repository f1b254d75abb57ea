#pragma once

#include <stdexcept>

namespace jigsaw {

// An exhaustive computation would exceed its configured size budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formula was evaluated outside the parameter regime it is stated for.
struct OutOfRegime : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace jigsaw
