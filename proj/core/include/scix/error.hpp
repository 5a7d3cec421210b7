#pragma once

#include <stdexcept>
#include <string>

namespace scix {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the valid index range of a structure.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (e.g. symbol >= sigma).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value does not fit the representation (overflowing sums, block alphabets wider than a word).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized data or malformed structural input (unbalanced parentheses).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace scix
