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

#include <functional>

namespace idec {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int max_depth = 50;
};

// Adaptive Simpson on [a, b] with Richardson correction. Throws
// QuadratureFailure when a subinterval hits max_depth without meeting
// the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {});

} // namespace idec
