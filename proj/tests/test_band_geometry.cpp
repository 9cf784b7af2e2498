#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "topocrit/band_geometry.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/invariants.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

using namespace topocrit;
using oracle::pi;

namespace {

Unitary2<double> hamiltonian(const RealVec3& d) { return pauli_dot(d); }

}  // namespace

TEST(DiracD1D, CopiesComponents) {
    EXPECT_EQ(dirac_d_1d(0.0, 1.0), RealVec3(1, 0, 0));
    EXPECT_EQ(dirac_d_1d(2.0, 0.0), RealVec3(0, 2, 0));
    EXPECT_EQ(dirac_d_1d(-1.0, 3.0), RealVec3(3, -1, 0));
}

TEST(EigenstateLower, XAxis) {
    const auto s = eigenstate_lower(RealVec3(1, 0, 0));
    EXPECT_NEAR(s.state(0).real(), -1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.state(1).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.state(0).imag(), 0, 1e-15);
    EXPECT_NEAR(s.state(1).imag(), 0, 1e-15);
    EXPECT_EQ(s.gauge, Gauge::Standard);
}

TEST(EigenstateLower, SouthPole) {
    const auto s = eigenstate_lower(RealVec3(0, 0, -1), Gauge::Standard);
    EXPECT_NEAR(std::abs(s.state(0) + 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.state(1)), 0, 1e-15);
}

TEST(EigenstateLower, EigenvalueMatchesDenseSolver) {
    const RealVec3 d(3, 4, 0);
    const auto s = eigenstate_lower(d);
    EXPECT_DOUBLE_EQ(s.energy, -5);
    EXPECT_LT((hamiltonian(d) * s.state + 5.0 * s.state).norm(), 1e-10);
    EXPECT_NEAR(fidelity_overlap(s.state, oracle::lower_state(d)), 1, 1e-12);
}

TEST(EigenstateLower, RandomVectorsBothGauges) {
    for (int i = 0; i < 200; ++i) {
        const RealVec3 d(oracle::uniform(-2, 2), oracle::uniform(-2, 2), oracle::uniform(-2, 2));
        for (Gauge g : {Gauge::Standard, Gauge::Complementary}) {
            const auto s = eigenstate_lower(d, g);
            EXPECT_NEAR(s.state.norm(), 1, 1e-12);
            EXPECT_LT((hamiltonian(d) * s.state + d.norm() * s.state).norm(), 1e-10);
        }
        const auto std_state = eigenstate_lower(d, Gauge::Standard).state;
        EXPECT_NEAR(std_state(0).imag(), 0, 1e-15);
        EXPECT_NEAR(std_state(1).real(), d(0) / std::sqrt(2 * d.norm() * (d.norm() - d(2))), 1e-12);
    }
}

TEST(EigenstateLower, Errors) {
    EXPECT_THROW(eigenstate_lower(RealVec3(0, 0, 0)), ZeroGap);
    EXPECT_THROW(eigenstate_lower(RealVec3(0, 0, 1), Gauge::Standard), GaugeSingularity);
    EXPECT_THROW(eigenstate_lower(RealVec3(0, 0, -1), Gauge::Complementary), GaugeSingularity);
    EXPECT_NO_THROW(eigenstate_lower(RealVec3(0, 0, 1)));
    EXPECT_EQ(eigenstate_lower(RealVec3(0, 0, 1)).gauge, Gauge::Complementary);
}

TEST(BerryConnection1D, ClosedForm) {
    EXPECT_DOUBLE_EQ(berry_connection_1d(0.0, 1.0), -0.5);
    EXPECT_DOUBLE_EQ(berry_connection_1d(0.0, -1.0), 0.5);
    EXPECT_DOUBLE_EQ(berry_connection_1d(1.0, 1.0), -0.25);
    EXPECT_THROW(berry_connection_1d(0.0, 0.0), ZeroGap);
}

TEST(BerryConnection1D, MatchesFiniteDifferenceInStandardGauge) {
    for (int i = 0; i < 50; ++i) {
        const double m = oracle::uniform(0.3, 2) * (i % 2 ? 1 : -1), k = oracle::uniform(-pi, pi);
        const double a = oracle::berry_connection([m](double q) { return dirac_d_1d(q, m); }, k, 1e-5, 0);
        EXPECT_NEAR(berry_connection_1d(k, m), a, 1e-8);
    }
}

TEST(Metric1D, DiracValues) {
    auto g = [](double k, double m) { return metric_1d(unit_vector_derivative(dirac_d_1d(k, m), RealVec3(0, 1, 0))); };
    EXPECT_NEAR(g(0, 1), 0.25, 1e-15);
    EXPECT_NEAR(g(0, 2), 0.0625, 1e-15);
    for (int i = 0; i < 100; ++i) {
        const double m = oracle::uniform(-2, 2), k = oracle::uniform(-pi, pi);
        const double a = berry_connection_1d(k, m);
        EXPECT_NEAR(g(k, m), a * a, 1e-12);
        EXPECT_NEAR(g(k, m), m * m / (4 * std::pow(m * m + k * k, 2)), 1e-12);
        EXPECT_GE(g(k, m), 0);
    }
}

TEST(Metric1D, SquareOfFiniteDifferenceConnection) {
    for (int i = 0; i < 50; ++i) {
        const double m = oracle::uniform(0.3, 2), k = oracle::uniform(-pi, pi);
        const double a = oracle::berry_connection([m](double q) { return dirac_d_1d(q, m); }, k, 1e-5, 0);
        EXPECT_NEAR(metric_1d(unit_vector_derivative(dirac_d_1d(k, m), RealVec3(0, 1, 0))), a * a, 1e-6);
    }
}

TEST(FidelityOverlap, Basics) {
    const auto psi = eigenstate_lower(RealVec3(0.3, -0.2, 0.9)).state;
    EXPECT_NEAR(fidelity_overlap(psi, psi), 1, 1e-15);
    Spinor<double> up(1, 0), down(0, 1);
    EXPECT_EQ(fidelity_overlap(up, down), 0);
}

TEST(FidelityOverlap, DiracExpansion) {
    constexpr double dk = 1e-3;
    const auto a = eigenstate_lower(dirac_d_1d(0.0, 1.0)).state;
    const auto b = eigenstate_lower(dirac_d_1d(dk, 1.0)).state;
    EXPECT_NEAR((1 - fidelity_overlap(a, b)) / 1.25e-7, 1, 0.01);
}

TEST(FidelityOverlap, GlobalPhaseInvariance) {
    const auto a = eigenstate_lower(RealVec3(0.3, -0.2, 0.9)).state;
    const auto b = eigenstate_lower(RealVec3(-0.1, 0.7, 0.4)).state;
    const std::complex<double> phase = std::polar(1.0, 1.234);
    EXPECT_NEAR(fidelity_overlap(a, b), fidelity_overlap(Spinor<double>(phase * a), b), 1e-15);
}

TEST(QGT, DiracAtOrigin) {
    const RealVec3 d = dirac_d_2d(0.0, 0.0, 1.0);
    const RealVec3 dx(1, 0, 0), dy(0, 1, 0);
    const auto txx = qgt_2d(d, dx, dx);
    EXPECT_NEAR(txx.real(), 0.25, 1e-15);
    EXPECT_EQ(txx.imag(), 0);
    const auto txy = qgt_2d(d, dx, dy);
    EXPECT_NEAR(txy.real(), 0, 1e-15);
    // Ω = 0.5 and Im T_xy = −Ω/2
    EXPECT_NEAR(txy.imag(), -0.25, 1e-15);
    const auto t = quantum_geometric_tensor(d, dx, dy);
    EXPECT_NEAR(t.berry_curvature(), 0.5, 1e-15);
    EXPECT_NEAR(metric_det_2d(t), 0.0625, 1e-15);
}

TEST(QGT, StructureAndFiniteDifferenceOracle) {
    for (int i = 0; i < 200; ++i) {
        const double m = oracle::uniform(0.3, 2) * (i % 2 ? 1 : -1);
        const double kx = oracle::uniform(-pi, pi), ky = oracle::uniform(-pi, pi);
        const auto t = quantum_geometric_tensor(dirac_d_2d(kx, ky, m), RealVec3(1, 0, 0), RealVec3(0, 1, 0));
        const Eigen::Matrix2d g = t.metric();
        EXPECT_NEAR(g(0, 1), g(1, 0), 1e-12);
        EXPECT_NEAR(t.tensor(0, 0).imag(), 0, 1e-12);
        EXPECT_NEAR(t.tensor(1, 1).imag(), 0, 1e-12);
        EXPECT_NEAR(t.tensor(0, 1).imag(), -t.tensor(1, 0).imag(), 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);

        const auto fd = oracle::qgt([m](const Momentum2& k) { return dirac_d_2d(k.x(), k.y(), m); }, Momentum2(kx, ky));
        EXPECT_LT((fd - t.tensor).cwiseAbs().maxCoeff(), 1e-6);
        const double omega = berry_curvature_2d_dirac(kx, ky, m);
        EXPECT_NEAR(t.berry_curvature(), omega, 1e-12);
        EXPECT_NEAR(metric_det_2d(t), omega * omega / 4, 1e-12);
    }
}

TEST(QGT, GaugeInvariantUnderPhaseChoice) {
    const auto d = [](const Momentum2& k) { return dirac_d_2d(k.x(), k.y(), 0.7); };
    for (int i = 0; i < 20; ++i) {
        const Momentum2 k(oracle::uniform(-2, 2), oracle::uniform(-2, 2));
        // pinning the other component is a momentum-dependent phase change
        const auto a = oracle::qgt(d, k, 1e-5, 0), b = oracle::qgt(d, k, 1e-5, 1);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_NEAR(a(0, 1).imag(), -berry_curvature_2d_dirac(k.x(), k.y(), 0.7) / 2, 1e-6);
    }
    const auto psi = eigenstate_lower(d(Momentum2(0.3, 0.1))).state;
    const auto chi = eigenstate_lower(d(Momentum2(0.5, -0.2))).state;
    const Spinor<double> rotated = std::polar(1.0, 2.1) * psi;
    EXPECT_NEAR(fidelity_overlap(rotated, chi), fidelity_overlap(psi, chi), 1e-12);
}

TEST(BerryCurvature2D, ClosedForm) {
    EXPECT_DOUBLE_EQ(berry_curvature_2d_dirac(0.0, 0.0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(berry_curvature_2d_dirac(0.0, 0.0, -1.0), -0.5);
    EXPECT_EQ(berry_curvature_2d_dirac(3.0, 4.0, 0.0), 0);
    EXPECT_THROW(berry_curvature_2d_dirac(0.0, 0.0, 0.0), ZeroGap);
}

TEST(BerryCurvature2D, MatchesFiniteDifference) {
    for (int i = 0; i < 50; ++i) {
        const double m = oracle::uniform(0.3, 2) * (i % 2 ? 1 : -1);
        const Momentum2 k(oracle::uniform(-pi, pi), oracle::uniform(-pi, pi));
        const double fd = oracle::berry_curvature([m](const Momentum2& q) { return dirac_d_2d(q.x(), q.y(), m); }, k);
        EXPECT_NEAR(berry_curvature_2d_dirac(k.x(), k.y(), m), fd, 1e-6);
    }
}

TEST(DivergenceExponents, DiracAtOrigin) {
    std::vector<double> ms, a, chi, omega, detg;
    for (int i = 0; i < 20; ++i) {
        const double m = 1e-3 * std::pow(100.0, i / 19.0);
        ms.push_back(m);
        a.push_back(berry_connection_1d(0.0, m));
        chi.push_back(metric_1d(unit_vector_derivative(dirac_d_1d(0.0, m), RealVec3(0, 1, 0))));
        omega.push_back(berry_curvature_2d_dirac(0.0, 0.0, m));
        detg.push_back(metric_det_2d(
            quantum_geometric_tensor(dirac_d_2d(0.0, 0.0, m), RealVec3(1, 0, 0), RealVec3(0, 1, 0))));
    }
    EXPECT_NEAR(oracle::loglog_slope(ms, a), -1, 0.01);
    EXPECT_NEAR(oracle::loglog_slope(ms, chi), -2, 0.01);
    EXPECT_NEAR(oracle::loglog_slope(ms, omega), -2, 0.01);
    EXPECT_NEAR(oracle::loglog_slope(ms, detg), -4, 0.01);
}

TEST(ManifoldLength, Constants) {
    const std::vector<double> zero(64, 0.0), unit(64, 1 / (2 * pi));
    EXPECT_EQ(manifold_length_1d<double>(zero), 0);
    EXPECT_NEAR(manifold_length_1d<double>(unit), 1, 1e-14);
    EXPECT_THROW(manifold_length_1d<double>(std::vector<double>{}), EmptyGrid);
}

namespace {

double walk_length(const WalkParams<>& p, std::vector<double>& f) {
    f.clear();
    std::vector<double> a;
    for (double k : periodic_grid(4096)) {
        f.push_back(rotated_curvature_1d(k, p));
        a.push_back(f.back() / 2);
    }
    return manifold_length_1d<double>(a) / pi;
}

}  // namespace

TEST(ManifoldLength, SingleSignedConnectionGivesWinding) {
    std::vector<double> f;
    const double length = walk_length({0.2, 0.5}, f);
    ASSERT_TRUE(std::all_of(f.begin(), f.end(), [](double v) { return v < 0; }));
    EXPECT_NEAR(length, std::abs(winding_integral(f)), 1e-10);
    EXPECT_NEAR(length, 1, 1e-10);
}

TEST(ManifoldLength, MixedSignExceedsWinding) {
    std::vector<double> f;
    const double length = walk_length({pi / 2, 0.3}, f);
    EXPECT_GT(length, std::abs(winding_integral(f)) + 0.1);
}

TEST(ManifoldArea, Constants) {
    EXPECT_EQ(manifold_area_2d(Eigen::MatrixXd::Zero(16, 16)), 0);
    EXPECT_NEAR(manifold_area_2d(Eigen::MatrixXd::Constant(16, 16, 1 / (2 * pi))), pi, 1e-13);
    EXPECT_THROW(manifold_area_2d(Eigen::MatrixXd(0, 0)), EmptyGrid);
}

TEST(ManifoldArea, BoundedBelowByHalfChern) {
    // Ω = F/2 changes sign for every nontrivial walk point tried, so the area exceeds |C|/2
    for (const WalkParams<> p : {WalkParams<>{1.0, -0.7}, {pi / 2, pi / 2}}) {
        const int n = 256;
        Eigen::MatrixXd omega(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) omega(i, j) = curvature_2d(Momentum2(2 * pi * i / n, 2 * pi * j / n), p) / 2;
        const long c = chern_number_2d(p, n).rounded;
        ASSERT_NE(c, 0);
        EXPECT_GT(manifold_area_2d(omega) / (2 * pi), std::abs(c) / 2.0);
        EXPECT_NEAR(std::abs(omega.sum()) * 4 * pi * pi / (n * n) / (2 * pi), std::abs(c), 1e-6);
    }
}

TEST(ManifoldArea, SingleSignedFieldEqualsIntegral) {
    Eigen::MatrixXd omega(32, 32);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) omega(i, j) = 1 + 0.5 * std::cos(2 * pi * i / 32) * std::sin(2 * pi * j / 32);
    EXPECT_NEAR(manifold_area_2d(omega), 0.5 * omega.sum() * 4 * pi * pi / (32 * 32), 1e-12);
    EXPECT_NEAR(manifold_area_2d(omega), 2 * pi * pi, 1e-12);
}
