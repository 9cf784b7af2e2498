#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "topocrit/criticality.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"

using namespace topocrit;
using oracle::pi;

namespace {

CriticalSweep power_law_sweep(double gamma, double nu) {
    CriticalSweep s;
    s.dimension = 1;
    s.curvature = [gamma, nu](double dk, double eps) {
        const double xi = std::pow(std::abs(eps), -nu);
        return std::pow(std::abs(eps), -gamma) / (1 + xi * xi * dk * dk);
    };
    return s;
}

}  // namespace

TEST(FindGapClosings, BothZonesAtOrigin) {
    const auto c = find_gap_closings(Model::Walk1D, WalkParams<>{0, 0}, 256);
    ASSERT_EQ(c.size(), 2u);
    bool zero = false, at_pi = false;
    for (const auto& g : c) {
        if (std::abs(wrap_angle(g.k.x())) < 1e-6) {
            zero = true;
            EXPECT_EQ(g.zone, Zone::Zero);
        }
        if (std::abs(wrap_angle(g.k.x() - pi)) < 1e-6) {
            at_pi = true;
            EXPECT_EQ(g.zone, Zone::Pi);
        }
        EXPECT_LT(g.gap, 1e-8);
    }
    EXPECT_TRUE(zero);
    EXPECT_TRUE(at_pi);
}

TEST(FindGapClosings, GappedPointIsEmpty) {
    EXPECT_TRUE(find_gap_closings(Model::Walk1D, WalkParams<>{pi / 2, 0}).empty());
    for (double k : periodic_grid(512)) EXPECT_GE(energy_1d(k, WalkParams<>{pi / 2, 0}), pi / 4 - 1e-12);
}

TEST(FindGapClosings, PiZoneOnly) {
    const auto c = find_gap_closings(Model::Walk1D, WalkParams<>{0.7, 0.7});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0].k.x(), pi, 1e-6);
    EXPECT_EQ(c[0].zone, Zone::Pi);
}

TEST(FindGapClosings, TwoDimensional) {
    const auto c = find_gap_closings(Model::Walk2D, WalkParams<>{0, pi / 2}, 128);
    bool found = false;
    for (const auto& g : c)
        found = found || (std::abs(wrap_angle(g.k.x() - pi / 2)) < 1e-6 && std::abs(wrap_angle(g.k.y() + pi / 2)) < 1e-6);
    EXPECT_TRUE(found);
    EXPECT_TRUE(find_gap_closings(Model::Walk2D, WalkParams<>{1.0, -0.7}, 64).empty());
}

TEST(FindGapClosings, Preconditions) {
    EXPECT_THROW(find_gap_closings(Model::Walk1D, WalkParams<>{0, 0}, 32), InvalidArgument);
    EXPECT_THROW(find_gap_closings(Model::Dirac1D, WalkParams<>{0, 0}), InvalidArgument);
}

TEST(FitLorentzian, SyntheticRoundTrip) {
    for (double f0 : {5.0, -3.0, 0.2})
        for (double xi : {10.0, 0.5}) {
            std::vector<double> k, f;
            for (int i = 0; i < 15; ++i) {
                const double dk = -0.05 + 0.1 * i / 14;
                k.push_back(1.0 + dk);
                f.push_back(f0 / (1 + xi * xi * dk * dk));
            }
            const auto fit = fit_lorentzian(k, f, 1.0);
            EXPECT_NEAR(fit.f_peak, f0, 1e-10 * std::abs(f0));
            EXPECT_NEAR(fit.xi, xi, 1e-10 * xi);
            EXPECT_EQ(fit.sign, 1);
            EXPECT_LT(fit.residual, 1e-12);
        }
}

TEST(FitLorentzian, NegativeBranch) {
    std::vector<double> k, f;
    for (int i = 0; i < 9; ++i) {
        const double dk = -0.1 + 0.2 * i / 8;
        k.push_back(dk);
        f.push_back(2 / (1 - 4 * dk * dk));
    }
    const auto fit = fit_lorentzian(k, f, 0.0);
    EXPECT_EQ(fit.sign, -1);
    EXPECT_NEAR(fit.xi, 2, 1e-10);
}

TEST(FitLorentzian, ConstantSamples) {
    const std::vector<double> k{-3, -2, -1, 0, 1, 2, 3}, f(7, 4.0);
    const auto fit = fit_lorentzian(k, f, 0.0);
    EXPECT_EQ(fit.xi, 0);
    EXPECT_NEAR(fit.f_peak, 4, 1e-14);
}

TEST(FitLorentzian, Errors) {
    const std::vector<double> k{0, 1, 2}, f{1, 2, 3};
    EXPECT_THROW(fit_lorentzian(k, f, 0.0), InvalidArgument);
    std::vector<double> kk, ff;
    for (int i = 0; i < 11; ++i) {
        kk.push_back(i - 5);
        ff.push_back(i % 2 ? 1.0 : -3.0);
    }
    EXPECT_THROW(fit_lorentzian(kk, ff, 0.0), PoorFit);
}

TEST(PeakProfile, Walk1DMatchesClosedForm) {
    for (double beta : {0.0, 0.5, -1.0, 2.0})
        for (bool at_pi : {false, true})
            for (double eps : {0.01, 0.05, 0.1, 0.3}) {
                const auto sweep = walk1d_sweep(beta, at_pi);
                const auto prof = peak_profile(sweep, eps);
                const auto closed = peak_asymptotics_1d(WalkParams<>{sweep.alpha_c + eps, beta}, at_pi);
                EXPECT_NEAR(prof.fit.xi * prof.fit.xi / closed.xi2, 1, 0.02) << beta << " " << at_pi << " " << eps;
                EXPECT_NEAR(prof.fit.f_peak / closed.f_peak, 1, 1e-3);
            }
}

TEST(PeakProfile, AlphaPointTwo) {
    const auto prof = peak_profile(walk1d_sweep(0.0), 0.2);
    EXPECT_NEAR(prof.fit.xi * prof.fit.xi / peak_asymptotics_1d(WalkParams<>{0.2, 0}, false).xi2, 1, 0.02);
}

TEST(ExtractExponents, Walk1D) {
    const auto fit = extract_exponents(walk1d_sweep(0.0));
    EXPECT_NEAR(fit.gamma, 1, 0.02);
    EXPECT_NEAR(fit.nu, 1, 0.02);
    EXPECT_EQ(fit.dimension, 1);
    EXPECT_EQ(fit.points, 20);
    EXPECT_TRUE(std::isfinite(fit.gamma_error) && std::isfinite(fit.nu_error));
    EXPECT_DOUBLE_EQ(fit.scaling_law_residual, std::abs(fit.gamma - fit.nu));
}

TEST(ExtractExponents, Walk1DAtPi) {
    const auto fit = extract_exponents(walk1d_sweep(0.6, true));
    EXPECT_NEAR(fit.alpha_c, 0.6, 1e-15);
    EXPECT_NEAR(fit.gamma, 1, 0.02);
    EXPECT_NEAR(fit.nu, 1, 0.02);
}

TEST(ExtractExponents, Walk2D) {
    const auto fit = extract_exponents(walk2d_sweep(pi / 2));
    EXPECT_NEAR(fit.gamma, 2, 0.05);
    EXPECT_NEAR(fit.nu, 1, 0.05);
    EXPECT_EQ(fit.dimension, 2);
}

TEST(ExtractExponents, DiracModels) {
    const auto f1 = extract_exponents(dirac_sweep(1));
    EXPECT_NEAR(f1.gamma, 1, 1e-6);
    EXPECT_NEAR(f1.nu, 1, 1e-6);
    const auto f2 = extract_exponents(dirac_sweep(2));
    EXPECT_NEAR(f2.gamma, 2, 1e-6);
    // (1 + δk²/M²)^{-3/2} is Lorentzian only to leading order
    EXPECT_NEAR(f2.nu, 1, 0.01);
}

TEST(ExtractExponents, SyntheticPowerLaw) {
    const auto fit = extract_exponents(power_law_sweep(3, 1.5));
    EXPECT_NEAR(fit.gamma, 3, 1e-6);
    EXPECT_NEAR(fit.nu, 1.5, 1e-6);
}

TEST(ExtractExponents, StableUnderDoubledWindowPoints) {
    for (const auto& sweep : {walk1d_sweep(0.0), walk2d_sweep(pi / 2)}) {
        const auto a = extract_exponents(sweep, 1e-3, 1e-1, 20), b = extract_exponents(sweep, 1e-3, 1e-1, 40);
        EXPECT_NEAR(a.gamma, b.gamma, 0.01);
        EXPECT_NEAR(a.nu, b.nu, 0.01);
    }
}

TEST(ExtractExponents, ScalingLawWithinFitError) {
    for (const auto& sweep : {walk1d_sweep(0.0), walk2d_sweep(pi / 2)}) {
        const auto f = extract_exponents(sweep);
        const double combined = f.gamma_error + f.dimension * f.nu_error;
        // standard errors do not include the systematic curvature of the log-log data
        EXPECT_LE(f.scaling_law_residual, 5 * combined);
    }
}

TEST(ExtractExponents, Errors) {
    const auto s = walk1d_sweep(0.0);
    EXPECT_THROW(extract_exponents(s, 0.0, 0.1), WindowTouchesCriticality);
    EXPECT_THROW(extract_exponents(s, -0.01, 0.1), WindowTouchesCriticality);
    EXPECT_THROW(extract_exponents(s, 0.1, 0.01), InvalidArgument);
    EXPECT_THROW(extract_exponents(s, 1e-3, 0.1, 5), InvalidArgument);
}

TEST(FlipTest, Walks) {
    EXPECT_NEAR(flip_test(walk1d_sweep(0.0), 1e-3), -1, 0.01);
    EXPECT_NEAR(flip_test(walk2d_sweep(pi / 2), 1e-3), -1, 0.01);
}

TEST(FlipTest, SymmetricSyntheticIsExact) {
    CriticalSweep s;
    s.curvature = [](double, double eps) { return 1 / eps; };
    EXPECT_EQ(flip_test(s, 0.3), -1);
}

TEST(FlipTest, GaplessRaises) {
    EXPECT_THROW(flip_test(walk1d_sweep(0.0), 0.0), ZeroGap);
}
