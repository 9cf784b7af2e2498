#include "topocrit/invariants.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "topocrit/band_geometry.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

namespace topocrit {

constexpr double kPi = std::numbers::pi;

InvariantResult quantize(double raw, int n, double tolerance) {
    if (!std::isfinite(raw)) throw QuantizationFailure("invariant integral is not finite");
    InvariantResult r;
    r.raw = raw;
    r.rounded = std::lround(raw);
    r.defect = std::abs(raw - static_cast<double>(r.rounded));
    r.n = n;
    if (r.defect >= tolerance)
        throw QuantizationFailure(fmt::format("quantization defect {:.3g} at N = {} exceeds {:.3g}", r.defect, n, tolerance));
    return r;
}

double winding_integral(std::span<const double> f) {
    if (f.empty()) throw EmptyGrid("winding_integral: no samples");
    double sum = 0;
    for (double v : f) sum += v;
    return sum / static_cast<double>(f.size());
}

double chern_integral(const Eigen::MatrixXd& f) {
    if (f.size() == 0) throw EmptyGrid("chern_integral: no samples");
    // (1/4π) Σ F (2π/N)²
    return f.sum() * kPi / static_cast<double>(f.size());
}

double plaquette_chern(const std::function<RealVec3(const Momentum2&)>& axis, int n) {
    if (n < 2) throw EmptyGrid("plaquette_chern: grid too small");
    const auto k = periodic_grid(n);
    std::vector<Spinor<double>> psi(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) psi[i * n + j] = eigenstate_lower(axis(Momentum2(k[i], k[j]))).state;

    auto at = [&](int i, int j) -> const Spinor<double>& { return psi[(i % n) * n + (j % n)]; };
    auto link = [](const Spinor<double>& a, const Spinor<double>& b) {
        const std::complex<double> z = a.dot(b);
        return z / std::abs(z);
    };
    double flux = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto u = link(at(i, j), at(i + 1, j)) * link(at(i + 1, j), at(i + 1, j + 1)) *
                           link(at(i + 1, j + 1), at(i, j + 1)) * link(at(i, j + 1), at(i, j));
            flux += std::arg(u);
        }
    // arg ⟨ψ(k)|ψ(k+δ)⟩ ≈ −A·δ, so the loop phase is −∫Ω
    return -flux / (2 * kPi);
}

InvariantResult winding_number_1d(const WalkParams<>& p, int n, double tolerance) {
    if (n < 2) throw EmptyGrid("winding_number_1d: grid too small");
    const auto k = periodic_grid(n);
    std::vector<double> f(n);
    for (int j = 0; j < n; ++j) f[j] = rotated_curvature_1d(k[j], p);
    return quantize(winding_integral(f), n, tolerance);
}

InvariantResult chern_number_2d(const WalkParams<>& p, int n, double tolerance) {
    if (n < 2) throw EmptyGrid("chern_number_2d: grid too small");
    const auto k = periodic_grid(n);
    Eigen::MatrixXd f(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f(i, j) = curvature_2d(Momentum2(k[i], k[j]), p);
    const InvariantResult r = quantize(chern_integral(f), n, tolerance);

    const double oracle =
        plaquette_chern([&](const Momentum2& q) { return RealVec3(zeta_2d(q, p).normalized()); }, n);
    if (std::lround(oracle) != r.rounded)
        throw OracleMismatch(fmt::format("chern_number_2d: integral {} vs plaquette {}", r.raw, oracle));
    return r;
}

}  // namespace topocrit
