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

#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "idec/metrics.hpp"

namespace idec::cli {

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string state_csv(const std::vector<double>& times, const std::vector<Matrix>& states,
                      const SpectralDecomposition& spectrum, const Matrix& hamiltonian) {
    std::ostringstream os;
    const Eigen::Index d = hamiltonian.rows();
    os << "t";
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) os << ",rho_re_" << k << "_" << l << ",rho_im_" << k << "_" << l;
    }
    os << ",purity,coherence_l1,energy,trace\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Matrix& rho = states[i];
        os << format_double(times[i]);
        for (Eigen::Index k = 0; k < d; ++k) {
            for (Eigen::Index l = 0; l < d; ++l) {
                os << "," << format_double(rho(k, l).real()) << "," << format_double(rho(k, l).imag());
            }
        }
        os << "," << format_double(purity(rho)) << "," << format_double(coherence_l1(rho, spectrum))
           << "," << format_double(energy_expectation(rho, hamiltonian)) << ","
           << format_double(rho.trace().real()) << "\n";
    }
    return os.str();
}

std::string stderr_csv(const std::vector<double>& times, const std::vector<RealMatrix>& se_re,
                       const std::vector<RealMatrix>& se_im) {
    std::ostringstream os;
    const Eigen::Index d = se_re.empty() ? 0 : se_re.front().rows();
    os << "t";
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) os << ",se_re_" << k << "_" << l << ",se_im_" << k << "_" << l;
    }
    os << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << format_double(times[i]);
        for (Eigen::Index k = 0; k < d; ++k) {
            for (Eigen::Index l = 0; l < d; ++l) {
                os << "," << format_double(se_re[i](k, l)) << "," << format_double(se_im[i](k, l));
            }
        }
        os << "\n";
    }
    return os.str();
}

void OutputSet::commit() {
    std::filesystem::create_directories(dir_);
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
    for (const auto& [name, content] : files_) {
        const std::filesystem::path final_path = dir_ / name;
        std::filesystem::path tmp = final_path;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            throw std::filesystem::filesystem_error("cannot write", tmp,
                                                    std::make_error_code(std::errc::io_error));
        }
        staged.emplace_back(tmp, final_path);
    }
    for (const auto& [tmp, final_path] : staged) std::filesystem::rename(tmp, final_path);
    files_.clear();
}

} // namespace idec::cli
