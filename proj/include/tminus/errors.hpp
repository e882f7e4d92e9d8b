/* Copyright 2026 The tminus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <stdexcept>
#include <string>

namespace tminus {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched or invalid parameters (wrong field, Q not a power of p, ...).
struct ParameterError : Error {
    using Error::Error;
};

/// Value outside the mathematical domain of an operation (division by
/// zero, factorization of zero, p-th root of a non-p-th-power, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A polynomial does not fit in the requested truncation window, or a
/// window is too small for the requested construction.
struct WindowError : Error {
    using Error::Error;
};

/// A standing hypothesis of the audited statement is violated by the
/// configuration (e.g. e <= 2 or p = 2 where e > 2 resp. p > 2 is assumed).
struct HypothesisError : Error {
    using Error::Error;
};

/// A linear map fails the conformal-symplectic identity.
struct ConformalError : Error {
    using Error::Error;
};

/// A group element or sample set does not respect a required direct-product
/// or central decomposition.
struct DecompositionError : Error {
    using Error::Error;
};

/// Sample projections do not span the required space.
struct RankError : Error {
    using Error::Error;
};

/// A sample deck lacks the data a solver needs (no scaled pairs, no
/// nondegenerate bracket pair, ...).
struct SampleError : Error {
    using Error::Error;
};

/// An exhaustive enumeration would exceed the configured resource budget.
struct ResourceError : Error {
    using Error::Error;
};

/// Bad command-line or suite usage.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace tminus
