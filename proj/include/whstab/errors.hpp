#pragma once

#include <stdexcept>
#include <string>

namespace whstab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sequence violates the recovery-placement rule or the successor relation.
class MalformedSequence : public Error {
public:
    using Error::Error;
};

/// Two constraint sets compared under different deadline-handling strategies.
class StrategyMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix or vector dimensions do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// An enumeration or window cap was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// No feasible infinite run exists from startup.
class EmptyLanguage : public Error {
public:
    using Error::Error;
};

/// Graph and closed-loop set were built for different alphabets.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// Eigenvalue computation requested for a non-square matrix.
class NonSquare : public Error {
public:
    using Error::Error;
};

/// Textual constraint or configuration input could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace whstab
