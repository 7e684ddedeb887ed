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

#include "idec/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "idec/errors.hpp"

namespace idec {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    const QuadratureOptions& options;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        if (depth >= options.max_depth) {
            std::ostringstream os;
            os << "adaptive Simpson reached depth " << depth << " on [" << a << ", " << b
               << "] with error estimate " << std::abs(delta) / 15.0;
            throw Error(ErrorKind::QuadratureFailure, os.str(), std::abs(delta) / 15.0);
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Tolerance relative to a coarse magnitude estimate of the integral.
    const double scale = std::abs(b - a) * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb)) / 6.0;
    const double tol = std::max(options.rel_tol * scale, options.abs_tol);
    return Simpson{f, options}.recurse(a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace idec
