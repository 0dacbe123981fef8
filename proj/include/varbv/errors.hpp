#pragma once

#include <stdexcept>
#include <string>

namespace varbv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised while reading spec files or CLI literals; message names the offending field.
struct ParseError : Error {
    using Error::Error;
};

struct OutOfDomainError : Error {
    using Error::Error;
};

struct UnsampledPointError : Error {
    using Error::Error;
};

struct DegenerateIntervalError : Error {
    using Error::Error;
};

struct InvalidTagError : Error {
    using Error::Error;
};

struct GridTooSmallError : Error {
    using Error::Error;
};

struct GridTooLargeError : Error {
    using Error::Error;
};

struct NonpositiveScaleError : Error {
    using Error::Error;
};

struct NoFiniteBracketError : Error {
    using Error::Error;
};

struct NotPointwiseOrderedError : Error {
    using Error::Error;
};

struct ConditionNotSatisfiedError : Error {
    using Error::Error;
};

struct DegenerateGapError : Error {
    using Error::Error;
};

} // namespace varbv
