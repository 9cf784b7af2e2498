#pragma once

#include <functional>
#include <span>

#include <Eigen/Core>

#include "topocrit/types.hpp"

namespace topocrit {

struct InvariantResult {
    double raw = 0;
    long rounded = 0;
    double defect = 0;  // |raw − rounded|
    int n = 0;
};

/// Round and check the quantization defect against `tolerance`.
InvariantResult quantize(double raw, int n, double tolerance);

/// (1/2π) ∫ F dk from samples on k_j = 2πj/N.
double winding_integral(std::span<const double> f);

/// (1/4π) ∫ F d²k from an N×N grid of samples.
double chern_integral(const Eigen::MatrixXd& f);

/// Lattice field-strength Chern number of the lower band of n(k)·σ on an N×N grid.
double plaquette_chern(const std::function<RealVec3(const Momentum2&)>& axis, int n);

InvariantResult winding_number_1d(const WalkParams<>& p, int n = 4096, double tolerance = 1e-3);

/// Skyrmion count of the walk, cross-checked against plaquette_chern on the same grid.
InvariantResult chern_number_2d(const WalkParams<>& p, int n = 256, double tolerance = 1e-3);

}  // namespace topocrit
