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

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "idec/errors.hpp"

namespace idec::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + "." + key, "missing required field");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
    return x;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, path + "." + key);
}

std::vector<double> number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string type_of(const json& v, const std::string& path) {
    const json& t = field(v, "type", path);
    if (!t.is_string()) throw ConfigError(path + ".type", "expected a string");
    return t.get<std::string>();
}

Complex complex_entry(const json& v, const std::string& path) {
    if (v.is_number()) return {number(v, path), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
    throw ConfigError(path, "expected a complex number as [re, im]");
}

Matrix complex_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(v.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        const json& row = v[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ConfigError(row_path, "expected " + std::to_string(rows) + " entries (square matrix)");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

json complex_matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

DriftPreset parse_drift(const json& v, const std::string& path) {
    const std::string type = type_of(v, path);
    if (type == "identity") return drift::Identity{};
    if (type == "affine") return drift::Affine{number_or(v, "a", 1.0, path), number_or(v, "b", 0.0, path)};
    if (type == "polynomial") return drift::Polynomial{number_list(field(v, "coeffs", path), path + ".coeffs")};
    throw ConfigError(path + ".type", "unknown drift preset '" + type + "' (identity | affine | polynomial)");
}

SigmaLevelPreset parse_sigma_level(const json& v, const std::string& path) {
    const std::string type = type_of(v, path);
    if (type == "constant") return sigma_level::Constant{number(field(v, "c", path), path + ".c")};
    if (type == "linear") return sigma_level::Linear{number_or(v, "c", 1.0, path)};
    if (type == "polynomial") {
        return sigma_level::Polynomial{number_list(field(v, "coeffs", path), path + ".coeffs")};
    }
    throw ConfigError(path + ".type", "unknown sigma_theta preset '" + type + "' (constant | linear | polynomial)");
}

SigmaTimePreset parse_sigma_time(const json& v, const std::string& path) {
    const std::string type = type_of(v, path);
    if (type == "constant") return sigma_time::Constant{};
    if (type == "piecewise_constant") {
        return sigma_time::PiecewiseConstant{
            number_list(field(v, "breakpoints", path), path + ".breakpoints"),
            number_list(field(v, "values", path), path + ".values")};
    }
    throw ConfigError(path + ".type", "unknown sigma_time preset '" + type + "' (constant | piecewise_constant)");
}

CorrelationPreset parse_correlation(const json& v, const std::string& path) {
    const std::string type = type_of(v, path);
    if (type == "uniform") return correlation::Uniform{};
    if (type == "gaussian") return correlation::Gaussian{number(field(v, "tau", path), path + ".tau")};
    if (type == "exponential") {
        return correlation::Exponential{number(field(v, "length", path), path + ".length")};
    }
    throw ConfigError(path + ".type", "unknown correlation preset '" + type + "' (uniform | gaussian | exponential)");
}

DirectLambda parse_direct_lambda(const json& v, const std::string& path) {
    const std::string type = type_of(v, path);
    if (type != "separable_linear") {
        throw ConfigError(path + ".type", "unknown direct_lambda preset '" + type + "' (separable_linear)");
    }
    const json& rates = field(v, "rates", path);
    const std::string rpath = path + ".rates";
    if (!rates.is_array() || rates.empty()) throw ConfigError(rpath, "expected a square table");
    const auto m = static_cast<Eigen::Index>(rates.size());
    RealMatrix table(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const std::vector<double> row =
            number_list(rates[static_cast<std::size_t>(i)], rpath + "[" + std::to_string(i) + "]");
        if (static_cast<Eigen::Index>(row.size()) != m) {
            throw ConfigError(rpath + "[" + std::to_string(i) + "]", "expected a square table");
        }
        for (Eigen::Index j = 0; j < m; ++j) table(i, j) = row[static_cast<std::size_t>(j)];
    }
    return DirectLambda{table};
}

NoiseModel parse_noise(const json& v, const std::string& path) {
    if (!v.is_object()) throw ConfigError(path, "expected an object");
    NoiseModel model;
    if (v.contains("drift_h")) model.drift = parse_drift(v["drift_h"], path + ".drift_h");
    if (v.contains("sigma_theta")) model.sigma_level = parse_sigma_level(v["sigma_theta"], path + ".sigma_theta");
    if (v.contains("sigma_time")) model.sigma_time = parse_sigma_time(v["sigma_time"], path + ".sigma_time");
    if (v.contains("correlation_g")) model.correlation = parse_correlation(v["correlation_g"], path + ".correlation_g");
    model.gamma = number_or(v, "gamma", 1.0, path);
    if (v.contains("direct_lambda") && !v["direct_lambda"].is_null()) {
        model.direct_lambda = parse_direct_lambda(v["direct_lambda"], path + ".direct_lambda");
    }
    try {
        model.validate();
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
    return model;
}

json noise_json(const NoiseModel& m) {
    json out;
    out["drift_h"] = std::visit(overloaded{
        [](const drift::Identity&) { return json{{"type", "identity"}}; },
        [](const drift::Affine& a) { return json{{"type", "affine"}, {"a", a.a}, {"b", a.b}}; },
        [](const drift::Polynomial& p) { return json{{"type", "polynomial"}, {"coeffs", p.coeffs}}; },
    }, m.drift);
    out["sigma_theta"] = std::visit(overloaded{
        [](const sigma_level::Constant& c) { return json{{"type", "constant"}, {"c", c.c}}; },
        [](const sigma_level::Linear& l) { return json{{"type", "linear"}, {"c", l.c}}; },
        [](const sigma_level::Polynomial& p) { return json{{"type", "polynomial"}, {"coeffs", p.coeffs}}; },
    }, m.sigma_level);
    out["sigma_time"] = std::visit(overloaded{
        [](const sigma_time::Constant&) { return json{{"type", "constant"}}; },
        [](const sigma_time::PiecewiseConstant& p) {
            return json{{"type", "piecewise_constant"}, {"breakpoints", p.breakpoints}, {"values", p.values}};
        },
    }, m.sigma_time);
    out["correlation_g"] = std::visit(overloaded{
        [](const correlation::Uniform&) { return json{{"type", "uniform"}}; },
        [](const correlation::Gaussian& g) { return json{{"type", "gaussian"}, {"tau", g.tau}}; },
        [](const correlation::Exponential& g) { return json{{"type", "exponential"}, {"length", g.length}}; },
    }, m.correlation);
    out["gamma"] = m.gamma;
    if (m.direct_lambda) {
        json rates = json::array();
        const RealMatrix& r = m.direct_lambda->rates;
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < r.cols(); ++j) row.push_back(r(i, j));
            rates.push_back(std::move(row));
        }
        out["direct_lambda"] = {{"type", "separable_linear"}, {"rates", std::move(rates)}};
    }
    return out;
}

const char* kStatePresets[] = {"plus_state", "maximally_mixed", "ground"};

} // namespace

bool OutputConfig::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ConfigError("$", "expected a JSON object at the top level");
    Scenario s;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ConfigError("$.name", "expected a string");
        s.name = doc["name"].get<std::string>();
    }
    s.hamiltonian = complex_matrix(field(doc, "hamiltonian", "$"), "$.hamiltonian");

    if (doc.contains("initial_state")) {
        const json& st = doc["initial_state"];
        if (st.is_string()) {
            const std::string name = st.get<std::string>();
            if (std::find(std::begin(kStatePresets), std::end(kStatePresets), name) == std::end(kStatePresets)) {
                throw ConfigError("$.initial_state",
                                  "unknown preset '" + name + "' (plus_state | maximally_mixed | ground)");
            }
            s.initial_state = name;
        } else {
            s.initial_state = complex_matrix(st, "$.initial_state");
        }
    }

    s.noise = parse_noise(field(doc, "noise", "$"), "$.noise");

    const json& grid = field(doc, "grid", "$");
    s.grid.t_start = number_or(grid, "t_start", 0.0, "$.grid");
    s.grid.t_end = number(field(grid, "t_end", "$.grid"), "$.grid.t_end");
    const json& steps = field(grid, "n_steps", "$.grid");
    if (!steps.is_number_integer() || steps.get<long long>() < 1) {
        throw ConfigError("$.grid.n_steps", "expected a positive integer");
    }
    s.grid.n_steps = steps.get<int>();
    try {
        s.grid.validate();
    } catch (const Error& e) {
        throw ConfigError("$.grid", e.what());
    }

    if (doc.contains("montecarlo")) {
        const json& mc = doc["montecarlo"];
        if (mc.contains("n_traj")) {
            if (!mc["n_traj"].is_number_integer() || mc["n_traj"].get<long long>() < 1) {
                throw ConfigError("$.montecarlo.n_traj", "expected a positive integer");
            }
            s.montecarlo.n_traj = mc["n_traj"].get<std::size_t>();
        }
        if (mc.contains("seed")) {
            if (!mc["seed"].is_number_unsigned()) {
                throw ConfigError("$.montecarlo.seed", "expected an unsigned 64-bit integer");
            }
            s.montecarlo.seed = mc["seed"].get<std::uint64_t>();
        }
    }
    if (doc.contains("outputs")) {
        const json& out = doc["outputs"];
        if (out.contains("directory")) {
            if (!out["directory"].is_string()) throw ConfigError("$.outputs.directory", "expected a string");
            s.outputs.directory = out["directory"].get<std::string>();
        }
        if (out.contains("formats")) {
            if (!out["formats"].is_array()) throw ConfigError("$.outputs.formats", "expected an array");
            s.outputs.formats.clear();
            for (const auto& f : out["formats"]) {
                if (!f.is_string() || (f != "csv" && f != "json")) {
                    throw ConfigError("$.outputs.formats", "formats are \"csv\" and \"json\"");
                }
                s.outputs.formats.push_back(f.get<std::string>());
            }
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open config file");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string(), e.what());
    }
    Scenario s = parse_scenario(doc);
    if (s.name.empty()) s.name = path.stem().string();
    return s;
}

json to_json(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["hamiltonian"] = complex_matrix_json(s.hamiltonian);
    doc["initial_state"] = std::visit(overloaded{
        [](const std::string& preset) { return json(preset); },
        [](const Matrix& m) { return complex_matrix_json(m); },
    }, s.initial_state);
    doc["noise"] = noise_json(s.noise);
    doc["grid"] = {{"t_start", s.grid.t_start}, {"t_end", s.grid.t_end}, {"n_steps", s.grid.n_steps}};
    doc["montecarlo"] = {{"n_traj", s.montecarlo.n_traj}, {"seed", s.montecarlo.seed}};
    doc["outputs"] = {{"directory", s.outputs.directory}, {"formats", s.outputs.formats}};
    return doc;
}

bool equivalent(const Scenario& a, const Scenario& b) {
    return to_json(a) == to_json(b);
}

Prepared prepare(const Scenario& scenario) {
    std::optional<HermitianOperator> h;
    try {
        h.emplace(scenario.hamiltonian);
    } catch (const Error& e) {
        throw ConfigError("$.hamiltonian", e.what());
    }
    SpectralDecomposition spectrum = eigendecompose(*h);
    const Eigen::Index d = h->dim();

    Matrix rho;
    if (const auto* preset = std::get_if<std::string>(&scenario.initial_state)) {
        if (*preset == "plus_state") {
            rho = Matrix::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0));
        } else if (*preset == "maximally_mixed") {
            rho = Matrix::Identity(d, d) / static_cast<double>(d);
        } else {
            // Ground level projector, normalized by its rank.
            rho = spectrum.projectors.front() / static_cast<double>(spectrum.members.front().size());
        }
    } else {
        rho = std::get<Matrix>(scenario.initial_state);
        if (rho.rows() != d) {
            throw ConfigError("$.initial_state", "dimension " + std::to_string(rho.rows()) +
                                                     " does not match the Hamiltonian (" +
                                                     std::to_string(d) + ")");
        }
    }
    std::optional<DensityMatrix> rho0;
    try {
        rho0.emplace(validate_density(rho));
    } catch (const Error& e) {
        throw ConfigError("$.initial_state", e.what());
    }
    if (scenario.noise.direct_lambda &&
        static_cast<std::size_t>(scenario.noise.direct_lambda->rates.rows()) != spectrum.level_count()) {
        throw ConfigError("$.noise.direct_lambda.rates",
                          "table must have one row per distinct energy level (" +
                              std::to_string(spectrum.level_count()) + ")");
    }
    return Prepared{scenario, std::move(*h), std::move(spectrum), std::move(*rho0)};
}

} // namespace idec::cli
