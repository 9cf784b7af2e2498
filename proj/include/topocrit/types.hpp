#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace topocrit {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Spinor = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using Unitary2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using RealVec3 = Vec3<double>;
using Momentum2 = Vec2<double>;

/// Gap-closing threshold on |d| (or |ζ|).
inline constexpr double kZeroGap = 1e-14;

template <typename Scalar>
inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

/// Reduce an angle to (−π, π].
template <typename Scalar>
Scalar wrap_angle(Scalar a) {
    using std::remainder;
    Scalar r = remainder(a, 2 * pi_v<Scalar>);
    return r <= -pi_v<Scalar> ? r + 2 * pi_v<Scalar> : r;
}

/// Reduce a momentum to [0, 2π).
template <typename Scalar>
Scalar wrap_momentum(Scalar k) {
    using std::floor;
    Scalar r = k - 2 * pi_v<Scalar> * floor(k / (2 * pi_v<Scalar>));
    return r >= 2 * pi_v<Scalar> ? Scalar(0) : r;
}

/// Pauli matrix σ_j, j ∈ {0: x, 1: y, 2: z}.
template <typename Scalar>
Unitary2<Scalar> pauli(int j) {
    using C = std::complex<Scalar>;
    Unitary2<Scalar> s;
    switch (j) {
        case 0: s << C(0), C(1), C(1), C(0); break;
        case 1: s << C(0), C(0, -1), C(0, 1), C(0); break;
        default: s << C(1), C(0), C(0), C(-1); break;
    }
    return s;
}

/// n·σ for a real 3-vector.
template <typename Derived>
auto pauli_dot(const Eigen::MatrixBase<Derived>& n) {
    using Scalar = typename Derived::Scalar;
    using C = std::complex<Scalar>;
    Unitary2<Scalar> h;
    h << C(n(2)), C(n(0), -n(1)), C(n(0), n(1)), C(-n(2));
    return h;
}

/// Rotation angles of a split-step walk.
template <typename Scalar = double>
struct WalkParams {
    Scalar alpha{};
    Scalar beta{};

    /// Angles reduced to (−π, π] for reporting. The protocol unitary is only
    /// projectively periodic in the angles, so computations use the raw values.
    WalkParams reduced() const { return {wrap_angle(alpha), wrap_angle(beta)}; }

    template <typename Other>
    WalkParams<Other> cast() const {
        return {static_cast<Other>(alpha), static_cast<Other>(beta)};
    }
};

/// Half-angle cosines and sines κ = cos(θ/2), λ = sin(θ/2).
template <typename Scalar>
struct HalfAngles {
    Scalar ka, la, kb, lb;

    explicit HalfAngles(const WalkParams<Scalar>& p) {
        using std::cos;
        using std::sin;
        ka = cos(p.alpha / 2);
        la = sin(p.alpha / 2);
        kb = cos(p.beta / 2);
        lb = sin(p.beta / 2);
    }
};

}  // namespace topocrit
