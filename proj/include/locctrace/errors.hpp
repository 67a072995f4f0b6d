// Copyright 2026 The locctrace developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace locctrace {

/// Base class for all errors thrown by the library. The CLI maps the
/// subclasses onto process exit codes: parameter/contract/precondition
/// problems exit 2, approximation failures exit 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or dimensionally inconsistent input data.
struct InvalidInputError : Error {
    using Error::Error;
};

/// A parameter outside its documented range.
struct InvalidParameterError : Error {
    using Error::Error;
};

/// An input violating a documented operation contract (e.g. a matrix that
/// must be Hermitian but is not).
struct ContractViolationError : Error {
    using Error::Error;
};

/// A runtime-detected precondition failure (e.g. a singular value below the
/// required floor).
struct PreconditionViolationError : Error {
    using Error::Error;
};

/// An internal quantity left its mathematically guaranteed range, indicating
/// a bug or a norm violation upstream.
struct InternalConsistencyError : Error {
    using Error::Error;
};

/// A certified polynomial construction could not reach the requested error
/// at the allowed degree. Carries the best error achieved and the degree at
/// which the search stopped.
struct ApproximationFailureError : Error {
    ApproximationFailureError(const std::string& what, double best, int degree)
        : Error(what), best_error(best), degree_reached(degree) {}
    double best_error;
    int degree_reached;
};

/// An estimate too small (relative to its noise floor) to pass through a
/// logarithm reliably.
struct UnreliableEstimateError : Error {
    using Error::Error;
};

} // namespace locctrace
