#pragma once

#include <stdexcept>
#include <string>

namespace lieconf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in different variable contexts (or over different algebras).
struct ContextMismatchError : Error {
    using Error::Error;
};

/// exact_divide was given a divisor whose leading coefficient in the division
/// variable is not a plain nonzero rational.
struct NotMonicError : Error {
    using Error::Error;
};

/// A nonzero H-eigenvalue beta was requested for a module over W(b) whose b
/// is not pinned to exactly 0.
struct DeltaBranchError : Error {
    using Error::Error;
};

/// A decision procedure (submodule search, irreducibility) was invoked while
/// free symbolic parameters remain in the action table.
struct NeedsPinnedParametersError : Error {
    using Error::Error;
};

/// derived_series was seeded with a subspace that is not closed under the
/// bracket modulo truncation.
struct ClosureError : Error {
    using Error::Error;
};

/// The analytic classification verdict and the submodule-search verdict
/// disagree; one of the two routes is wrong.
struct InconsistencyError : Error {
    using Error::Error;
};

/// Generic precondition violation (bad filtration index, unknown variable,
/// rank > 1 submodule search, ...).
struct DomainError : Error {
    using Error::Error;
};

} // namespace lieconf
