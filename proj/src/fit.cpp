// Copyright 2026 The cqed-teleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cqed/dynamics.hpp"

namespace cqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct LinearFit {
    double sin_coeff = 0.0;
    double cos_coeff = 0.0;
    double offset = 0.0;
    double sum_sq = 0.0;
};

// For fixed frequency the model is linear in (sin, cos, 1) coefficients.
LinearFit fit_at(double f, std::span<const double> t, std::span<const double> y) {
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double x = kTwoPi * f * t[k];
        const Eigen::Vector3d basis(std::sin(x), std::cos(x), 1.0);
        normal += basis * basis.transpose();
        rhs += basis * y[k];
    }
    const Eigen::Vector3d c = normal.ldlt().solve(rhs);
    LinearFit fit{c(0), c(1), c(2), 0.0};
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double x = kTwoPi * f * t[k];
        const double r = y[k] - (c(0) * std::sin(x) + c(1) * std::cos(x) + c(2));
        fit.sum_sq += r * r;
    }
    return fit;
}

} // namespace

OscillationFit fit_oscillation(std::span<const double> times, std::span<const double> values) {
    const std::size_t n = times.size();
    if (n != values.size()) {
        throw ArgumentError("fit_oscillation: times and values differ in length");
    }
    if (n < 10) {
        throw ArgumentError("fit_oscillation: need at least 10 samples");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (!(times[k] > times[k - 1])) {
            throw ArgumentError("fit_oscillation: times must be strictly increasing");
        }
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) {
        mean += v / static_cast<double>(n);
    }
    double flat_rms = 0.0;
    for (double v : values) {
        flat_rms += (v - mean) * (v - mean);
    }
    flat_rms = std::sqrt(flat_rms / static_cast<double>(n));
    if (*hi - *lo <= 1e-12 * (1.0 + std::abs(mean))) {
        throw FitError("fit_oscillation: series is constant, no oscillation to fit", flat_rms);
    }

    std::vector<double> gaps(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        gaps[k - 1] = times[k] - times[k - 1];
    }
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(gaps.size() / 2), gaps.end());
    const double median_gap = gaps[gaps.size() / 2];
    const double span = times[n - 1] - times[0];

    // Coarse periodogram on a grid 10x finer than the Fourier resolution.
    const double df = 0.1 / span;
    const double f_hi = 0.5 / median_gap;
    double best_f = df;
    double best_ss = fit_at(df, times, values).sum_sq;
    for (double f = 2.0 * df; f <= f_hi; f += df) {
        const double ss = fit_at(f, times, values).sum_sq;
        if (ss < best_ss) {
            best_ss = ss;
            best_f = f;
        }
    }

    // Golden-section refinement inside the neighbouring grid cells.
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(best_f - df, 0.5 * df);
    double b = best_f + df;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = fit_at(c, times, values).sum_sq;
    double fd = fit_at(d, times, values).sum_sq;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        if (b - a <= 1e-12 * b) {
            converged = true;
            break;
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = fit_at(c, times, values).sum_sq;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = fit_at(d, times, values).sum_sq;
        }
    }
    const double f = 0.5 * (a + b);
    const LinearFit best = fit_at(f, times, values);
    const double rms = std::sqrt(best.sum_sq / static_cast<double>(n));
    if (!converged) {
        throw FitError("fit_oscillation: frequency search did not converge", rms);
    }

    OscillationFit out;
    out.frequency = f;
    out.amplitude = std::hypot(best.sin_coeff, best.cos_coeff);
    out.phase = std::atan2(best.cos_coeff, best.sin_coeff);
    out.offset = best.offset;
    out.rms_residual = rms;
    if (out.amplitude <= 1e-9 * (1.0 + std::abs(out.offset))) {
        throw FitError("fit_oscillation: fitted amplitude is zero", rms);
    }
    if (f * span < 2.0) {
        std::ostringstream msg;
        msg << "fit_oscillation: record spans " << f * span << " periods, need >= 2";
        throw FitError(msg.str(), rms);
    }
    return out;
}

} // namespace cqed
