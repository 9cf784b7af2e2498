#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace topocrit {

/// Ordinary least squares y = intercept + slope·x.
struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double slope_error = 0;
    double r2 = 1;
    double rms_residual = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// n log-spaced values on [lo, hi].
std::vector<double> logspace(double lo, double hi, int n);

/// Golden-section minimum of a unimodal f on [a, b].
double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Points 2πj/N, j = 0..N−1.
std::vector<double> periodic_grid(int n);

/// Cell-centred points −π + (i + ½)·2π/N.
std::vector<double> cell_centred_grid(int n);

}  // namespace topocrit
