#pragma once

#include <stdexcept>
#include <string>

namespace unamb {

/// Malformed text input: grammar files, union files, points, words.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vectors or points whose lengths disagree with the ambient dimension.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A checked integer operation would leave the range of std::int64_t.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A query mentions a terminal the grammar does not declare.
class UndeclaredTerminal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was handed a grammar that fails validation.
class InvalidGrammar : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A linear set has a basis vector with more than two nonzero coordinates.
class NotLightError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An invariant that must hold for any light union failed during refutation. Always a bug.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace unamb
