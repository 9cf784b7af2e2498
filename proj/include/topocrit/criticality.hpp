#pragma once

#include <functional>
#include <span>
#include <vector>

#include "topocrit/models.hpp"
#include "topocrit/types.hpp"

namespace topocrit {

/// Quasienergy at which a gap closes.
enum class Zone { Zero, Pi };

struct GapClosing {
    Momentum2 k;  // k.y() is 0 for the 1D walk
    Zone zone;
    double gap;   // min(E, π − E) after refinement
};

/// Isolated minima of min(E, π − E) below 1e-8 on a grid of `grid` points per axis.
std::vector<GapClosing> find_gap_closings(Model model, const WalkParams<>& p, int grid = 256);

/// min(E, π − E) of a walk at k.
double band_gap(Model model, const Momentum2& k, const WalkParams<>& p);

/// F(k_c + δk) = F_peak / (1 + sign·ξ²δk²).
struct LorentzianFit {
    double f_peak = 0;
    double xi = 0;
    int sign = 1;
    double residual = 0;  // rms residual of 1/F
    double r2 = 1;
};

LorentzianFit fit_lorentzian(std::span<const double> k, std::span<const double> f, double k_c);

/// Curvature near a critical point, F(k_c + δk; α_c + ε), along a fixed momentum direction.
struct CriticalSweep {
    std::function<double(double dk, double eps)> curvature;
    double alpha_c = 0;
    double k_c = 0;
    int dimension = 1;
};

/// 1D walk at fixed β around k_c = 0 (α_c = −β) or k_c = π (α_c = β).
CriticalSweep walk1d_sweep(double beta, bool at_pi = false);
/// 2D walk at fixed β along k_y = −k_x through (π/2, −π/2); α_c = 0.
CriticalSweep walk2d_sweep(double beta);
/// Dirac model of the given dimension around k = 0; M_c = 0.
CriticalSweep dirac_sweep(int dimension);

struct CurvatureProfile {
    std::vector<double> dk;
    std::vector<double> f;
    double k_c = 0;
    LorentzianFit fit;
};

/// Lorentzian fit at distance ε from criticality; the sampling radius min(0.5/ξ, 0.1) is refined once.
CurvatureProfile peak_profile(const CriticalSweep& sweep, double eps, int samples = 15);

struct ExponentFit {
    double alpha_c = 0;
    double gamma = 0;
    double nu = 0;
    double gamma_error = 0;
    double nu_error = 0;
    double eps_min = 0;
    double eps_max = 0;
    int points = 0;
    int dimension = 1;
    double scaling_law_residual = 0;  // |γ − Dν|
};

ExponentFit extract_exponents(const CriticalSweep& sweep, double eps_min = 1e-3, double eps_max = 1e-1,
                              int points = 20);

/// F(k_c, α_c − ε) / F(k_c, α_c + ε).
double flip_test(const CriticalSweep& sweep, double eps);

}  // namespace topocrit
