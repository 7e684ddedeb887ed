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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "idec/grid.hpp"
#include "idec/noise.hpp"
#include "idec/operators.hpp"

namespace idec::cli {

// Configuration problem, reported with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct MonteCarloConfig {
    std::size_t n_traj = 10000;
    std::uint64_t seed = 1;
};

struct OutputConfig {
    std::string directory = ".";
    std::vector<std::string> formats{"csv", "json"};

    bool wants(const std::string& format) const;
};

// "plus_state", "maximally_mixed", "ground", or an explicit matrix.
using InitialState = std::variant<std::string, Matrix>;

struct Scenario {
    std::string name;
    Matrix hamiltonian;
    InitialState initial_state = std::string("plus_state");
    NoiseModel noise;
    TimeGrid grid;
    MonteCarloConfig montecarlo;
    OutputConfig outputs;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& scenario);

bool equivalent(const Scenario& a, const Scenario& b);

// The scenario with its Hamiltonian diagonalized and initial state resolved.
struct Prepared {
    Scenario scenario;
    HermitianOperator hamiltonian;
    SpectralDecomposition spectrum;
    DensityMatrix rho0;
};

// Throws ConfigError when the Hamiltonian, state, or noise fail validation.
Prepared prepare(const Scenario& scenario);

} // namespace idec::cli
