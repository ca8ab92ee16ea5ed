#pragma once

#include <stdexcept>
#include <string>

namespace algoprob {

// Base for every error the library raises. The CLI maps any Error to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

class MergeError : public Error {
public:
    using Error::Error;
};

// The string has no entry in an experimental distribution (finite support),
// which is different from having frequency zero.
class NotObservedError : public Error {
public:
    using Error::Error;
};

class InsufficientSupportError : public Error {
public:
    using Error::Error;
};

class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

class LoadError : public Error {
public:
    using Error::Error;
};

} // namespace algoprob
