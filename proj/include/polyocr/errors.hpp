// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#pragma once

#include <stdexcept>
#include <string>

namespace polyocr {

/// Base class for all polyocr errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input data: unreadable files, malformed markup, schema violations.
/// CLI maps this to exit code 1.
struct InputError : Error {
    using Error::Error;
};

/// A library invariant was violated. CLI maps this to exit code 2.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace polyocr
