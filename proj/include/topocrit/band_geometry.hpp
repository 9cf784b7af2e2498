#pragma once

#include <cmath>
#include <complex>
#include <span>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "topocrit/errors.hpp"
#include "topocrit/types.hpp"

namespace topocrit {

/// d-vector of the 1D Dirac model H = Mσ_x + kσ_y.
template <typename Scalar>
Vec3<Scalar> dirac_d_1d(Scalar k, Scalar mass) {
    return {mass, k, Scalar(0)};
}

/// d-vector of the 2D Dirac model H = k_xσ_x + k_yσ_y + Mσ_z.
template <typename Scalar>
Vec3<Scalar> dirac_d_2d(Scalar kx, Scalar ky, Scalar mass) {
    return {kx, ky, mass};
}

/// Phase convention of the lower-band spinor.
///  Standard:      lower component ∝ d₁ + i d₂, singular at d = +|d|ẑ.
///  Complementary: upper component ∝ d₁ − i d₂, singular at d = −|d|ẑ.
enum class Gauge { Standard, Complementary };

template <typename Scalar>
struct BandState {
    Spinor<Scalar> state;
    Scalar energy;
    Gauge gauge;
};

/// Gauge that stays away from its singular pole for this d.
template <typename Derived>
Gauge preferred_gauge(const Eigen::MatrixBase<Derived>& d) {
    return d(2) > 0 ? Gauge::Complementary : Gauge::Standard;
}

template <typename Derived>
BandState<typename Derived::Scalar> eigenstate_lower(const Eigen::MatrixBase<Derived>& d, Gauge gauge) {
    using Scalar = typename Derived::Scalar;
    using C = std::complex<Scalar>;
    using std::sqrt;
    const Scalar norm = d.norm();
    if (norm < Scalar(kZeroGap)) throw ZeroGap("eigenstate_lower: |d| below gap threshold");

    Spinor<Scalar> psi;
    if (gauge == Gauge::Standard) {
        const Scalar gap = norm - d(2);
        if (gap < Scalar(kZeroGap)) throw GaugeSingularity("eigenstate_lower: d at the north pole");
        psi << C(d(2) - norm), C(d(0), d(1));
        psi /= sqrt(2 * norm * gap);
    } else {
        const Scalar gap = norm + d(2);
        if (gap < Scalar(kZeroGap)) throw GaugeSingularity("eigenstate_lower: d at the south pole");
        psi << -C(d(0), -d(1)), C(gap);
        psi /= sqrt(2 * norm * gap);
    }
    return {psi, -norm, gauge};
}

/// Lower eigenstate of d·σ in the gauge returned by preferred_gauge().
template <typename Derived>
BandState<typename Derived::Scalar> eigenstate_lower(const Eigen::MatrixBase<Derived>& d) {
    return eigenstate_lower(d, preferred_gauge(d));
}

/// Berry connection ⟨ψ₋|i∂_k|ψ₋⟩ of the 1D Dirac model.
template <typename Scalar>
Scalar berry_connection_1d(Scalar k, Scalar mass) {
    using std::hypot;
    if (hypot(k, mass) < Scalar(kZeroGap)) throw ZeroGap("berry_connection_1d: M = k = 0");
    return -mass / (2 * (mass * mass + k * k));
}

/// ∂d̂ from d and ∂d.
template <typename D1, typename D2>
Vec3<typename D1::Scalar> unit_vector_derivative(const Eigen::MatrixBase<D1>& d, const Eigen::MatrixBase<D2>& dd) {
    using Scalar = typename D1::Scalar;
    const Scalar norm = d.norm();
    if (norm < Scalar(kZeroGap)) throw ZeroGap("unit_vector_derivative: |d| below gap threshold");
    const Vec3<Scalar> n = d / norm;
    return (dd - n * n.dot(dd)) / norm;
}

/// g_kk = ¼ ∂_k d̂ · ∂_k d̂.
template <typename Derived>
typename Derived::Scalar metric_1d(const Eigen::MatrixBase<Derived>& dk_dhat) {
    return dk_dhat.squaredNorm() / 4;
}

/// |⟨a|b⟩|.
template <typename D1, typename D2>
auto fidelity_overlap(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
    return std::abs(a.dot(b));
}

/// Quantum geometric tensor of the lower band.
template <typename Scalar>
struct QGT {
    Eigen::Matrix<std::complex<Scalar>, 2, 2> tensor;

    Eigen::Matrix<Scalar, 2, 2> metric() const { return tensor.real(); }
    Scalar berry_curvature() const { return -2 * tensor(0, 1).imag(); }
};

/// T_ab = ¼ ∂_a d̂·∂_b d̂ − (i/4) d̂·(∂_a d̂ × ∂_b d̂) from d and the raw derivatives ∂_a d, ∂_b d.
template <typename D1, typename D2, typename D3>
std::complex<typename D1::Scalar> qgt_2d(const Eigen::MatrixBase<D1>& d, const Eigen::MatrixBase<D2>& da_d,
                                         const Eigen::MatrixBase<D3>& db_d) {
    using Scalar = typename D1::Scalar;
    const Vec3<Scalar> n = d.normalized();
    const Vec3<Scalar> na = unit_vector_derivative(d, da_d);
    const Vec3<Scalar> nb = unit_vector_derivative(d, db_d);
    return {na.dot(nb) / 4, -n.dot(na.cross(nb)) / 4};
}

template <typename D1, typename D2, typename D3>
QGT<typename D1::Scalar> quantum_geometric_tensor(const Eigen::MatrixBase<D1>& d, const Eigen::MatrixBase<D2>& dx_d,
                                                  const Eigen::MatrixBase<D3>& dy_d) {
    QGT<typename D1::Scalar> t;
    t.tensor(0, 0) = qgt_2d(d, dx_d, dx_d);
    t.tensor(0, 1) = qgt_2d(d, dx_d, dy_d);
    t.tensor(1, 0) = std::conj(t.tensor(0, 1));
    t.tensor(1, 1) = qgt_2d(d, dy_d, dy_d);
    return t;
}

/// Ω_xy of the 2D Dirac model.
template <typename Scalar>
Scalar berry_curvature_2d_dirac(Scalar kx, Scalar ky, Scalar mass) {
    using std::pow;
    const Scalar r2 = kx * kx + ky * ky + mass * mass;
    if (r2 < Scalar(kZeroGap * kZeroGap)) throw ZeroGap("berry_curvature_2d_dirac: M = k = 0");
    return mass / (2 * pow(r2, Scalar(1.5)));
}

template <typename Scalar>
Scalar metric_det_2d(const Eigen::Matrix<Scalar, 2, 2>& g) {
    return g.determinant();
}

template <typename Scalar>
Scalar metric_det_2d(const QGT<Scalar>& t) {
    return t.metric().determinant();
}

/// ∫|A| dk over samples on a uniform grid spanning [0, 2π).
template <typename Scalar>
Scalar manifold_length_1d(std::span<const Scalar> connection) {
    if (connection.empty()) throw EmptyGrid("manifold_length_1d: no samples");
    Scalar sum = 0;
    for (Scalar a : connection) sum += std::abs(a);
    return sum * 2 * pi_v<Scalar> / static_cast<Scalar>(connection.size());
}

/// ∫½|Ω| d²k over a uniform grid spanning [0, 2π)².
template <typename Derived>
typename Derived::Scalar manifold_area_2d(const Eigen::MatrixBase<Derived>& curvature) {
    using Scalar = typename Derived::Scalar;
    if (curvature.size() == 0) throw EmptyGrid("manifold_area_2d: no samples");
    const Scalar cell = 4 * pi_v<Scalar> * pi_v<Scalar> / static_cast<Scalar>(curvature.size());
    return curvature.cwiseAbs().sum() * cell / 2;
}

}  // namespace topocrit
