#include "topocrit/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "topocrit/errors.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

namespace topocrit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUsable = 1e-13;
constexpr double kCriticalGuard = 1e-3;

void check_grid(int n, int r_max) {
    if (n < 8) throw InvalidArgument("correlation: grid too small");
    if (r_max < 0) throw InvalidArgument("correlation: negative R_max");
}

/// Near a closing the gap is ≈ |α − α_c|/2 for both walks.
void guard_criticality(double min_gap) {
    if (2 * min_gap < kCriticalGuard)
        throw AtCriticality("correlation: within 1e-3 of a critical point, the peak is undersampled");
}

}  // namespace

CorrelationSeries fourier_series(std::span<const double> f, int r_max) {
    const int n = static_cast<int>(f.size());
    check_grid(n, r_max);
    CorrelationSeries s;
    for (int r = 0; r <= r_max; ++r) {
        std::complex<double> acc = 0;
        for (int j = 0; j < n; ++j) {
            // reduce jR mod N before forming the phase
            const long m = (static_cast<long>(j) * r) % n;
            acc += f[j] * std::polar(1.0, 2 * kPi * m / n);
        }
        acc /= n;
        s.r.push_back(r);
        s.value.push_back(acc.real());
        s.max_imag = std::max(s.max_imag, std::abs(acc.imag()));
    }
    return s;
}

CorrelationSeries wannier_correlation_1d(const WalkParams<>& p, int r_max, int n) {
    check_grid(n, r_max);
    const auto k = periodic_grid(n);
    std::vector<double> f(n);
    double min_gap = kPi;
    for (int j = 0; j < n; ++j) {
        f[j] = rotated_curvature_1d(k[j], p);
        const double e = energy_1d(k[j], p);
        min_gap = std::min({min_gap, e, kPi - e});
    }
    guard_criticality(min_gap);
    CorrelationSeries s = fourier_series(f, r_max);
    s.model = "walk1d";
    s.params = p;
    return s;
}

CorrelationSeries wannier_correlation_2d(const WalkParams<>& p, int r_max, int n, Slice slice) {
    check_grid(n, r_max);
    const auto k = periodic_grid(n);
    double min_gap = kPi;
    auto sample = [&](const Momentum2& q) {
        const double e = energy_2d(q, p);
        min_gap = std::min({min_gap, e, kPi - e});
        return curvature_2d(q, p);
    };

    std::vector<double> f(n, 0.0);
    if (slice == Slice::Diagonal) {
        for (int j = 0; j < n; ++j) f[j] = sample(diagonal_slice(k[j]));
    } else {
        // e^{i(k_x − k_y)R} depends on (i − j) mod N only
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f[((i - j) % n + n) % n] += sample(Momentum2(k[i], k[j]));
        for (double& v : f) v /= n;
    }
    guard_criticality(min_gap);
    CorrelationSeries s = fourier_series(f, r_max);
    s.model = "walk2d";
    s.params = p;
    s.slice = slice;
    return s;
}

DecayFit fit_decay(const CorrelationSeries& series, int r_min, int r_max) {
    std::vector<int> r;
    std::vector<double> v;
    for (std::size_t i = 0; i < series.r.size(); ++i) {
        if (series.r[i] < r_min || (r_max >= 0 && series.r[i] > r_max)) continue;
        r.push_back(series.r[i]);
        v.push_back(series.value[i]);
    }
    const auto usable = [&](std::size_t i) { return std::abs(v[i]) > kUsable; };
    const auto n_usable = std::count_if(v.begin(), v.end(), [](double x) { return std::abs(x) > kUsable; });
    if (n_usable < 6) throw InsufficientDecade("fit_decay: fewer than 6 usable points");

    DecayFit out;
    int changes = 0, last_sign = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(10, v.size()); ++i) {
        if (!usable(i)) continue;
        const int s = v[i] > 0 ? 1 : -1;
        if (last_sign && s != last_sign) ++changes;
        last_sign = s;
    }
    out.oscillating = changes >= 2;

    std::vector<double> x, y;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!usable(i)) continue;
        if (out.oscillating) {
            const double a = std::abs(v[i]);
            const double l = i > 0 ? std::abs(v[i - 1]) : 0.0;
            const double rr = i + 1 < v.size() ? std::abs(v[i + 1]) : 0.0;
            if (a < l || a < rr) continue;
        }
        x.push_back(r[i]);
        y.push_back(std::log(std::abs(v[i])));
    }
    if (x.size() < 3) throw InsufficientDecade("fit_decay: envelope too short");
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*hi - *lo < std::log(10.0)) throw InsufficientDecade("fit_decay: dynamic range below one decade");

    const LinearFit lf = linear_fit(x, y);
    if (lf.slope >= 0) throw InsufficientDecade("fit_decay: series does not decay");
    out.decay_length = -1 / lf.slope;
    out.slope_error = lf.slope_error / (lf.slope * lf.slope);
    out.points = static_cast<int>(x.size());
    return out;
}

}  // namespace topocrit
