#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "topocrit/errors.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/types.hpp"

namespace topocrit {

/// e^{itσ_z}.
template <typename Scalar>
Unitary2<Scalar> shift_z(Scalar t) {
    Unitary2<Scalar> m = Unitary2<Scalar>::Zero();
    m(0, 0) = std::polar(Scalar(1), t);
    m(1, 1) = std::polar(Scalar(1), -t);
    return m;
}

/// One period of the 2D walk, S(k_x) C_y(β) S(k_y) C_y(α) S(k_x+k_y) C_y(β).
template <typename Scalar>
Unitary2<Scalar> unitary_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    return shift_z(q.x()) * coin_y(p.beta) * shift_z(q.y()) * coin_y(p.alpha) * shift_z(q.x() + q.y()) *
           coin_y(p.beta);
}

/// Point on the k_y = −k_x slice.
template <typename Scalar>
Vec2<Scalar> diagonal_slice(Scalar kx) {
    return {kx, -kx};
}

template <typename Scalar>
Scalar rho_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    using std::cos;
    using std::sin;
    const HalfAngles<Scalar> h(p);
    const Scalar kx = q.x(), ky = q.y();
    return h.ka * cos(p.beta) * cos(kx) * cos(kx + 2 * ky) - h.ka * sin(kx) * sin(kx + 2 * ky) -
           h.la * sin(p.beta) * cos(kx) * cos(kx);
}

template <typename Scalar>
Vec3<Scalar> zeta_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    using std::cos;
    using std::sin;
    const HalfAngles<Scalar> h(p);
    const Scalar kx = q.x(), ky = q.y();
    const Scalar ka = h.ka, la = h.la, kb = h.kb, lb = h.lb;
    return {-2 * lb * sin(kx) * (la * lb * cos(kx) - ka * kb * cos(kx + 2 * ky)),
            la * kb * kb - la * lb * lb * cos(2 * kx) + 2 * ka * kb * lb * cos(kx) * cos(kx + 2 * ky),
            la * kb * lb * sin(2 * kx) - ka * (kb * kb * sin(2 * (kx + ky)) + lb * lb * sin(2 * ky))};
}

/// Numerator φ of F = φ/|ζ|³.
template <typename Scalar>
Scalar phi_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    using std::cos;
    const HalfAngles<Scalar> h(p);
    const Scalar kx = q.x(), ky = q.y();
    const Scalar ka = h.ka, la = h.la, kb = h.kb, lb = h.lb;
    const Scalar kb2 = kb * kb, lb2 = lb * lb;
    return 2 * ka * lb * (kb2 + lb2) *
           (4 * ka * ka * kb2 * lb * cos(kx) * cos(kx + 2 * ky) +
            ka * la * kb * (2 * kb2 * cos(2 * ky) * cos(2 * kx + 2 * ky) - lb2 * (2 * cos(2 * kx) + cos(4 * ky) + 3)) +
            2 * la * la * lb * cos(2 * ky) * (lb2 - kb2 * cos(2 * kx)));
}

template <typename Scalar>
Scalar energy_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    using std::atan2;
    return atan2(zeta_2d(q, p).norm(), rho_2d(q, p));
}

/// Skyrmion density (∂_x n × ∂_y n)·n.
template <typename Scalar>
Scalar curvature_2d(const Vec2<Scalar>& q, const WalkParams<Scalar>& p) {
    using std::sqrt;
    const Scalar z2 = zeta_2d(q, p).squaredNorm();
    if (z2 < Scalar(kZeroGap * kZeroGap)) throw ZeroGap("curvature_2d: gap closed");
    return phi_2d(q, p) / (z2 * sqrt(z2));
}

/// Peak height at (π/2, −π/2) and the approximate ξ_x² along k_x.
template <typename Scalar>
PeakAsymptotics<Scalar> peak_asymptotics_2d(const WalkParams<Scalar>& p) {
    using std::abs;
    using std::cos;
    using std::sin;
    using std::sqrt;
    using std::tan;
    const Scalar a = p.alpha, b = p.beta;
    const Scalar one_minus = 1 - cos(a);
    if (one_minus < Scalar(1e-12)) throw AtCriticality("peak_asymptotics_2d: α ≡ 0 mod 2π");
    const Scalar sig = sin(a / 2) < 0 ? Scalar(-1) : Scalar(1);
    const Scalar f = 2 * sig * (sin(a - b) - sin(a) - sin(b)) / one_minus;
    const Scalar lb = sin(b / 2);
    const Scalar xi_num = 2 * sqrt(Scalar(2)) * cos(a / 2) *
                          (2 * lb * lb * (5 + 2 * cos(a) + cos(b)) - sin(b) / tan(a / 2) * (3 * cos(b) + cos(a) - 4));
    return {f, abs(xi_num) / sqrt(one_minus)};
}

}  // namespace topocrit
