// Copyright 2026 The idec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace idec {

enum class ErrorKind {
    NotHermitian,
    TraceNotOne,
    NotPositive,
    DimensionMismatch,
    QuadratureFailure,
    KernelNotPSD,
    KernelAsymmetric,
    StepTooLarge,
    WeightsNotNormalized,
    GridMismatch,
    InvalidArgument,
    Unsupported,
};

const char* to_string(ErrorKind kind);

// All library failures. `measured` carries the offending quantity when the
// error is a tolerance violation (e.g. the most negative eigenvalue for
// NotPositive), and is 0 otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double measured = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), measured_(measured) {}

    ErrorKind kind() const noexcept { return kind_; }
    double measured() const noexcept { return measured_; }

private:
    ErrorKind kind_;
    double measured_;
};

} // namespace idec
