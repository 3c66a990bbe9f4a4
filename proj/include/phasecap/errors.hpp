/*
 * Copyright 2026 the phasecap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace phasecap {

/// Base class of all phasecap exceptions. `code()` is a stable short
/// identifier suitable for machine-readable error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Invalid input: a precondition on user-supplied data failed.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Internal numerical failure: inputs were admissible but an algorithm
/// could not complete within its tolerances.
class NumericalError : public Error {
public:
    using Error::Error;
};

struct NonSymmetricError : ValidationError {
    explicit NonSymmetricError(const std::string& d) : ValidationError("NonSymmetric", d) {}
};

struct NotPositiveDefiniteError : ValidationError {
    explicit NotPositiveDefiniteError(const std::string& d)
        : ValidationError("NotPositiveDefinite", d) {}
};

struct OddDimensionError : ValidationError {
    explicit OddDimensionError(const std::string& d) : ValidationError("OddDimension", d) {}
};

struct LengthMismatchError : ValidationError {
    explicit LengthMismatchError(const std::string& d) : ValidationError("LengthMismatch", d) {}
};

struct DegeneratePlaneError : ValidationError {
    explicit DegeneratePlaneError(const std::string& d) : ValidationError("DegeneratePlane", d) {}
};

struct BlobTooSmallError : ValidationError {
    explicit BlobTooSmallError(const std::string& d) : ValidationError("TooSmall", d) {}
};

struct GridTooNarrowError : ValidationError {
    explicit GridTooNarrowError(const std::string& d) : ValidationError("GridTooNarrow", d) {}
};

struct InsufficientDecayError : ValidationError {
    explicit InsufficientDecayError(const std::string& d)
        : ValidationError("InsufficientDecay", d) {}
};

struct AllMaskedError : ValidationError {
    explicit AllMaskedError(const std::string& d) : ValidationError("AllMasked", d) {}
};

struct NoContourError : ValidationError {
    explicit NoContourError(const std::string& d) : ValidationError("NoContour", d) {}
};

struct SingularBError : ValidationError {
    explicit SingularBError(const std::string& d) : ValidationError("SingularB", d) {}
};

struct BadInputError : ValidationError {
    explicit BadInputError(const std::string& d) : ValidationError("BadInput", d) {}
};

struct NoConvergenceError : NumericalError {
    explicit NoConvergenceError(const std::string& d) : NumericalError("NoConvergence", d) {}
};

struct PairingError : NumericalError {
    explicit PairingError(const std::string& d) : NumericalError("PairingFailure", d) {}
};

struct DegeneracyError : NumericalError {
    explicit DegeneracyError(const std::string& d) : NumericalError("DegeneracyFailure", d) {}
};

} // namespace phasecap
