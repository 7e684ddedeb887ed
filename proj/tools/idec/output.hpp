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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "idec/operators.hpp"

namespace idec::cli {

// Shortest round-trip decimal form ("%.17g").
std::string format_double(double x);

// Header: t, rho_re_k_l, rho_im_k_l (row-major), purity, coherence_l1, energy, trace.
std::string state_csv(const std::vector<double>& times, const std::vector<Matrix>& states,
                      const SpectralDecomposition& spectrum, const Matrix& hamiltonian);

// Header: t, se_re_k_l, se_im_k_l (row-major).
std::string stderr_csv(const std::vector<double>& times, const std::vector<RealMatrix>& se_re,
                       const std::vector<RealMatrix>& se_im);

// Files staged in memory and written together on commit(); each file goes
// to a temporary name first and is renamed into place.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(std::string name, std::string content) {
        files_.emplace_back(std::move(name), std::move(content));
    }
    void commit();

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace idec::cli
