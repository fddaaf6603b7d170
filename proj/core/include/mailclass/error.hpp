// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <stdexcept>
#include <string>

namespace mailclass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or invalid arguments supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data that violates a documented contract (schema, triage, degenerate corpus).
class DataError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An invariant the library itself maintains did not hold.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace mailclass
