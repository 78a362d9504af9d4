#pragma once

#include <stdexcept>
#include <string>

namespace hsym {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct ParamMismatch : Error {
    using Error::Error;
};

struct NonInvertible : Error {
    using Error::Error;
};

struct NotAMember : Error {
    using Error::Error;
};

/// Input matrix is not in the monoid: off-diagonal blocks not divisible by a or b.
struct BlockDivisibility : Error {
    using Error::Error;
};

struct NotInNormalizer : Error {
    using Error::Error;
};

struct IllConditioned : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace hsym
