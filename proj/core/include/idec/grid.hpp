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

#include <vector>

#include "idec/errors.hpp"

namespace idec {

// Uniform time grid t_i = t_start + i * (t_end - t_start) / n_steps, i = 0..n_steps.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_steps = 10;

    void validate() const {
        if (n_steps < 1) throw Error(ErrorKind::InvalidArgument, "grid needs n_steps >= 1");
        if (!(t_end > t_start)) throw Error(ErrorKind::InvalidArgument, "grid needs t_end > t_start");
        if (t_start != 0.0) throw Error(ErrorKind::InvalidArgument, "grid must start at t = 0");
    }
    double step() const { return (t_end - t_start) / n_steps; }
    double time(int i) const {
        return i == n_steps ? t_end : t_start + i * step();
    }
    std::vector<double> times() const {
        std::vector<double> out(static_cast<std::size_t>(n_steps) + 1);
        for (int i = 0; i <= n_steps; ++i) out[static_cast<std::size_t>(i)] = time(i);
        return out;
    }
    bool operator==(const TimeGrid&) const = default;
};

} // namespace idec
