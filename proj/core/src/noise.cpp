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

#include "idec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "idec/errors.hpp"
#include "idec/quadrature.hpp"

namespace idec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void invalid(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

// Level-only part of eta, i.e. eta / (gamma * sigma_time^2).
double level_eta(const NoiseModel& model, double theta, double theta_prime) {
    if (theta == theta_prime) return 0.0;
    const double a = model.sigma_of_level(theta);
    const double b = model.sigma_of_level(theta_prime);
    const double value = a * a + b * b - 2.0 * a * b * model.g(theta, theta_prime);
    return std::max(value, 0.0);
}

} // namespace

void NoiseModel::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) invalid("gamma must be finite and >= 0");
    std::visit(overloaded{
                   [](const sigma_time::Constant&) {},
                   [](const sigma_time::PiecewiseConstant& p) {
                       if (p.values.size() != p.breakpoints.size() + 1) {
                           invalid("piecewise_constant needs one more value than breakpoints");
                       }
                       for (double v : p.values) {
                           if (!(v >= 0.0) || !std::isfinite(v)) {
                               invalid("sigma_time values must be finite and >= 0");
                           }
                       }
                       for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                           if (!(p.breakpoints[i] > 0.0) ||
                               (i > 0 && !(p.breakpoints[i] > p.breakpoints[i - 1]))) {
                               invalid("breakpoints must be positive and strictly increasing");
                           }
                       }
                   },
               },
               sigma_time);
    std::visit(overloaded{
                   [](const correlation::Uniform&) {},
                   [](const correlation::Gaussian& c) {
                       if (!(c.tau >= 0.0)) invalid("gaussian correlation needs tau >= 0");
                   },
                   [](const correlation::Exponential& c) {
                       if (!(c.length > 0.0)) invalid("exponential correlation needs length > 0");
                   },
               },
               correlation);
    if (direct_lambda) {
        const RealMatrix& r = direct_lambda->rates;
        if (r.rows() != r.cols() || r.rows() == 0) invalid("direct_lambda rates must be square");
        const double asym = (r - r.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12) {
            throw Error(ErrorKind::KernelAsymmetric, "direct_lambda rates are not symmetric", asym);
        }
        if (!r.allFinite()) invalid("direct_lambda rates must be finite");
    }
}

double NoiseModel::h(double theta) const {
    return std::visit(overloaded{
                          [&](const drift::Identity&) { return theta; },
                          [&](const drift::Affine& a) { return a.a * theta + a.b; },
                          [&](const drift::Polynomial& p) { return horner(p.coeffs, theta); },
                      },
                      drift);
}

double NoiseModel::sigma_of_level(double theta) const {
    return std::visit(overloaded{
                          [&](const sigma_level::Constant& c) { return c.c; },
                          [&](const sigma_level::Linear& l) { return l.c * theta; },
                          [&](const sigma_level::Polynomial& p) { return horner(p.coeffs, theta); },
                      },
                      sigma_level);
}

double NoiseModel::sigma_of_time(double t) const {
    return std::visit(overloaded{
                          [](const sigma_time::Constant&) { return 1.0; },
                          [&](const sigma_time::PiecewiseConstant& p) {
                              const auto it =
                                  std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
                              return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
                          },
                      },
                      sigma_time);
}

double NoiseModel::sigma(double t, double theta) const {
    return std::sqrt(gamma) * sigma_of_time(t) * sigma_of_level(theta);
}

double NoiseModel::g(double theta, double theta_prime) const {
    if (theta == theta_prime) return 1.0;
    return std::visit(overloaded{
                          [](const correlation::Uniform&) { return 1.0; },
                          [&](const correlation::Gaussian& c) {
                              const double d = theta - theta_prime;
                              return std::exp(-c.tau * c.tau * d * d);
                          },
                          [&](const correlation::Exponential& c) {
                              return std::exp(-std::abs(theta - theta_prime) / c.length);
                          },
                      },
                      correlation);
}

bool NoiseModel::time_independent() const {
    if (const auto* p = std::get_if<sigma_time::PiecewiseConstant>(&sigma_time)) {
        return std::all_of(p->values.begin(), p->values.end(),
                           [&](double v) { return v == p->values.front(); });
    }
    return true;
}

double NoiseModel::time_variance(double t0, double t1) const {
    if (t1 <= t0) return 0.0;
    return std::visit(overloaded{
                          [&](const sigma_time::Constant&) { return t1 - t0; },
                          [&](const sigma_time::PiecewiseConstant& p) {
                              double acc = 0.0;
                              double lo = 0.0;
                              for (std::size_t i = 0; i < p.values.size(); ++i) {
                                  const double hi = i < p.breakpoints.size()
                                                        ? p.breakpoints[i]
                                                        : std::numeric_limits<double>::infinity();
                                  const double a = std::max(lo, t0);
                                  const double b = std::min(hi, t1);
                                  if (b > a) acc += p.values[i] * p.values[i] * (b - a);
                                  lo = hi;
                              }
                              return acc;
                          },
                      },
                      sigma_time);
}

double eta(const NoiseModel& model, double t, double theta, double theta_prime) {
    const double st = model.sigma_of_time(t);
    return model.gamma * st * st * level_eta(model, theta, theta_prime);
}

double lambda_pair(const NoiseModel& model, double t, double theta, double theta_prime) {
    if (t < 0.0) invalid("lambda needs t >= 0");
    if (t == 0.0 || theta == theta_prime) return 0.0;
    const auto* piecewise = std::get_if<sigma_time::PiecewiseConstant>(&model.sigma_time);
    if (piecewise == nullptr) {
        return model.gamma * t * level_eta(model, theta, theta_prime);
    }
    // Integrate each piece separately; the right end of a piece is evaluated
    // just inside it so the jump at the breakpoint is never sampled.
    double acc = 0.0;
    double lo = 0.0;
    for (double bp : piecewise->breakpoints) {
        if (bp >= t) break;
        const double inside = std::nextafter(bp, lo);
        acc += adaptive_simpson(
            [&](double s) { return eta(model, std::min(s, inside), theta, theta_prime); }, lo, bp);
        lo = bp;
    }
    const double last = std::nextafter(t, lo);
    acc += adaptive_simpson(
        [&](double s) { return eta(model, std::min(s, last), theta, theta_prime); }, lo, t);
    return acc;
}

double lambda_global(const NoiseModel& model, double t) {
    if (t < 0.0) invalid("lambda needs t >= 0");
    return model.gamma * model.time_variance(0.0, t);
}

RealMatrix lambda_levels(const NoiseModel& model, const std::vector<double>& levels, double t) {
    const auto m = static_cast<Eigen::Index>(levels.size());
    if (model.direct_lambda) {
        const RealMatrix& rates = model.direct_lambda->rates;
        if (rates.rows() != m) {
            std::ostringstream os;
            os << "direct_lambda table is " << rates.rows() << "x" << rates.cols() << " but the spectrum has "
               << m << " distinct levels";
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
        return t * rates;
    }
    RealMatrix out(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        out(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
            out(i, j) = out(j, i) = lambda_pair(model, t, levels[static_cast<std::size_t>(i)],
                                                levels[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

RealMatrix lambda_rate_table(const NoiseModel& model, const std::vector<double>& levels) {
    if (!model.time_independent()) {
        throw Error(ErrorKind::Unsupported, "rate table needs time-independent sigma");
    }
    if (model.direct_lambda) return lambda_levels(model, levels, 1.0);
    const double s = model.sigma_of_time(0.0);
    const auto m = static_cast<Eigen::Index>(levels.size());
    RealMatrix out(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            out(i, j) = model.gamma * s * s *
                        level_eta(model, levels[static_cast<std::size_t>(i)],
                                  levels[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

RealMatrix correlation_matrix(const NoiseModel& model, const std::vector<double>& levels) {
    const auto m = static_cast<Eigen::Index>(levels.size());
    RealMatrix out(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            out(i, j) = model.g(levels[static_cast<std::size_t>(i)], levels[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

} // namespace idec
