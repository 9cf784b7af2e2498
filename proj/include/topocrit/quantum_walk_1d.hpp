#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>
#include <Eigen/LU>

#include "topocrit/errors.hpp"
#include "topocrit/types.hpp"

namespace topocrit {

/// C_y(θ) = exp(−iθσ_y/2).
template <typename Scalar>
Unitary2<Scalar> coin_y(Scalar theta) {
    using std::cos;
    using std::sin;
    const Scalar c = cos(theta / 2), s = sin(theta / 2);
    Unitary2<Scalar> m;
    m << c, -s, s, c;
    return m;
}

/// S↑(k) = diag(1, e^{−ik}).
template <typename Scalar>
Unitary2<Scalar> shift_up(Scalar k) {
    Unitary2<Scalar> m = Unitary2<Scalar>::Identity();
    m(1, 1) = std::polar(Scalar(1), -k);
    return m;
}

/// S↓(k) = diag(e^{ik}, 1).
template <typename Scalar>
Unitary2<Scalar> shift_down(Scalar k) {
    Unitary2<Scalar> m = Unitary2<Scalar>::Identity();
    m(0, 0) = std::polar(Scalar(1), k);
    return m;
}

/// One period of the 1D split-step walk, S↑ C_y(α) S↓ C_y(β).
template <typename Scalar>
Unitary2<Scalar> unitary_1d(Scalar k, const WalkParams<Scalar>& p) {
    return shift_up(k) * coin_y(p.alpha) * shift_down(k) * coin_y(p.beta);
}

/// U = cos E · I − i sin E · n·σ with E ∈ [0, π] (upper band).
template <typename Scalar>
struct EffectiveHamiltonianSample {
    Scalar energy;
    Vec3<Scalar> axis;
};

template <typename Scalar>
EffectiveHamiltonianSample<Scalar> effective_hamiltonian(const Unitary2<Scalar>& u) {
    using C = std::complex<Scalar>;
    using std::atan2;
    using std::sqrt;
    // strip the global U(1) phase so that det = 1
    const Unitary2<Scalar> v = u / sqrt(u.determinant());
    const Scalar c = v.trace().real() / 2;
    Vec3<Scalar> w;
    for (int j = 0; j < 3; ++j) w(j) = (C(0, 1) * (v * pauli<Scalar>(j)).trace()).real() / 2;
    const Scalar s = w.norm();
    if (s < Scalar(1e-12)) throw FlatDegenerate("effective_hamiltonian: sin E vanishes, axis undefined");
    return {atan2(s, c), w / s};
}

/// Re tr U / 2 = κ_α κ_β cos k − λ_α λ_β.
template <typename Scalar>
Scalar rho_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::cos;
    const HalfAngles<Scalar> h(p);
    return h.ka * h.kb * cos(k) - h.la * h.lb;
}

/// ζ = sin E · n.
template <typename Scalar>
Vec3<Scalar> zeta_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::cos;
    using std::sin;
    const HalfAngles<Scalar> h(p);
    return {h.ka * h.lb * sin(k), h.la * h.kb + h.ka * h.lb * cos(k), -h.ka * h.kb * sin(k)};
}

template <typename Scalar>
Vec3<Scalar> dzeta_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::cos;
    using std::sin;
    const HalfAngles<Scalar> h(p);
    return {h.ka * h.lb * cos(k), -h.ka * h.lb * sin(k), -h.ka * h.kb * cos(k)};
}

/// Upper-band quasienergy in [0, π].
template <typename Scalar>
Scalar energy_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::atan2;
    return atan2(zeta_1d(k, p).norm(), rho_1d(k, p));
}

/// (n × ∂_k n)·A with A = (κ_β, 0, λ_β).
template <typename Scalar>
Scalar curvature_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::cos;
    using std::sin;
    const HalfAngles<Scalar> h(p);
    const Scalar c = cos(k), s = sin(k);
    const Scalar zy = c * h.ka * h.lb + h.la * h.kb;
    const Scalar den = 2 * s * s * h.ka * h.ka + 2 * zy * zy;
    if (den < Scalar(2 * kZeroGap * kZeroGap)) throw ZeroGap("curvature_1d: gap closed");
    return (-c * sin(p.alpha) * h.kb - 2 * h.ka * h.ka * h.lb) / den;
}

/// Rotation about ŷ taking A = (κ_β, 0, λ_β) to ẑ.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> gauge_rotation(const WalkParams<Scalar>& p) {
    const HalfAngles<Scalar> h(p);
    const Scalar c = h.lb, s = -h.kb;
    Eigen::Matrix<Scalar, 3, 3> r;
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

/// ζ′ = R ζ = (κ_α sin k, ζ_y, 0).
template <typename Scalar>
Vec3<Scalar> rotated_zeta_1d(Scalar k, const WalkParams<Scalar>& p) {
    return gauge_rotation(p) * zeta_1d(k, p);
}

/// F′ = (ζ′_x ∂ζ′_y − ζ′_y ∂ζ′_x)/(ζ′_x² + ζ′_y²).
template <typename Scalar>
Scalar rotated_curvature_1d(Scalar k, const WalkParams<Scalar>& p) {
    using std::cos;
    const HalfAngles<Scalar> h(p);
    using std::sin;
    const Scalar c = cos(k), s = sin(k);
    const Scalar zy = h.la * h.kb + h.ka * h.lb * c;
    const Scalar den = h.ka * h.ka * s * s + zy * zy;
    if (den < Scalar(kZeroGap * kZeroGap)) throw ZeroGap("rotated_curvature_1d: gap closed");
    return (-h.ka * h.ka * h.lb - h.la * h.ka * h.kb * c) / den;
}

template <typename Scalar>
struct PeakAsymptotics {
    Scalar f_peak;
    Scalar xi2;
};

/// Peak height and ξ² at k_c = 0 (λ_{α+β}) or k_c = π (λ_{α−β}).
template <typename Scalar>
PeakAsymptotics<Scalar> peak_asymptotics_1d(const WalkParams<Scalar>& p, bool at_pi) {
    using std::sin;
    const HalfAngles<Scalar> h(p);
    const Scalar l = at_pi ? sin((p.alpha - p.beta) / 2) : sin((p.alpha + p.beta) / 2);
    if (std::abs(l) < Scalar(1e-12)) throw AtCriticality("peak_asymptotics_1d: λ_{α±β} vanishes");
    const Scalar cross = h.ka * h.kb * h.la * h.lb;
    const Scalar num = h.kb * h.kb + h.ka * h.ka * h.kb * h.kb + (at_pi ? cross : -cross);
    return {(at_pi ? h.ka : -h.ka) / l, num / (2 * l * l)};
}

}  // namespace topocrit
