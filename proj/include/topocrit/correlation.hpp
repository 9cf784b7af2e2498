#pragma once

#include <span>
#include <string>
#include <vector>

#include "topocrit/types.hpp"

namespace topocrit {

/// Momentum sampling of the 2D transform.
///  FullZone: N×N sum with phase e^{i(k_x − k_y)R}, i.e. R = (R, −R).
///  Diagonal: 1D sum of F(k_x, −k_x) e^{i k_x R} along the k_y = −k_x slice.
enum class Slice { FullZone, Diagonal };

struct CorrelationSeries {
    std::vector<int> r;
    std::vector<double> value;
    double max_imag = 0;
    std::string model;
    WalkParams<> params;
    Slice slice = Slice::Diagonal;
};

/// F̃(R) = (1/N) Σ_j F(k_j) e^{i k_j R} for samples on k_j = 2πj/N.
CorrelationSeries fourier_series(std::span<const double> f, int r_max);

CorrelationSeries wannier_correlation_1d(const WalkParams<>& p, int r_max, int n = 4096);
CorrelationSeries wannier_correlation_2d(const WalkParams<>& p, int r_max, int n, Slice slice = Slice::Diagonal);

struct DecayFit {
    double decay_length = 0;
    bool oscillating = false;
    double slope_error = 0;
    int points = 0;  // envelope points used
};

/// Decay length from log|F̃| vs R on the envelope, restricted to r_min ≤ R ≤ r_max (r_max < 0: no limit).
DecayFit fit_decay(const CorrelationSeries& series, int r_min = 0, int r_max = -1);

}  // namespace topocrit
