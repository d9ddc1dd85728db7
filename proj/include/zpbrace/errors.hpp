#pragma once

#include <stdexcept>
#include <string>

namespace zpbrace {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// padic
struct NonUnit : Error {
    using Error::Error;
};
struct NotASquare : Error {
    using Error::Error;
};

// latform
struct NotSymmetric : Error {
    using Error::Error;
};
struct NotUnimodular : Error {
    using Error::Error;
};
// Raised when a classification needs Jordan scales below the working
// precision but the input has directions indistinguishable from zero.
struct InsufficientPrecision : Error {
    using Error::Error;
};

// brace
struct RankDeficient : Error {
    using Error::Error;
};
struct UnitKernel : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};

// isoclinism
struct PrecisionTooSmall : Error {
    using Error::Error;
};
struct NoNondegenerateLift : Error {
    using Error::Error;
};

} // namespace zpbrace
