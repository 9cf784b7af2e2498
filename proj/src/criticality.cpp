#include "topocrit/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "topocrit/band_geometry.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

namespace topocrit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosingTolerance = 1e-8;

double quasienergy(Model model, const Momentum2& k, const WalkParams<>& p) {
    switch (model) {
        case Model::Walk1D: return energy_1d(k.x(), p);
        case Model::Walk2D: return energy_2d(k, p);
        default: throw InvalidArgument("gap search is defined for the walk models only");
    }
}

double periodic_distance(double a, double b) {
    const double d = std::abs(std::remainder(a - b, 2 * kPi));
    return d;
}

void push_unique(std::vector<GapClosing>& out, GapClosing c) {
    c.k = Momentum2(wrap_momentum(c.k.x()), wrap_momentum(c.k.y()));
    for (const auto& e : out)
        if (periodic_distance(e.k.x(), c.k.x()) < 1e-6 && periodic_distance(e.k.y(), c.k.y()) < 1e-6) return;
    out.push_back(c);
}

LorentzianFit lorentzian_unchecked(std::span<const double> k, std::span<const double> f, double k_c) {
    if (k.size() != f.size() || k.size() < 7) throw InvalidArgument("fit_lorentzian: need at least 7 samples");
    std::vector<double> x(k.size()), y(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!std::isfinite(f[i]) || f[i] == 0) throw PoorFit("fit_lorentzian: zero or non-finite sample");
        x[i] = (k[i] - k_c) * (k[i] - k_c);
        y[i] = 1 / f[i];
    }
    const LinearFit lf = linear_fit(x, y);
    if (lf.intercept == 0) throw PoorFit("fit_lorentzian: peak height diverges");
    const double ratio = lf.slope / lf.intercept;
    return {1 / lf.intercept, std::sqrt(std::abs(ratio)), ratio >= 0 ? 1 : -1, lf.rms_residual, lf.r2};
}

CurvatureProfile sample_profile(const CriticalSweep& sweep, double eps, double radius, int samples) {
    CurvatureProfile prof;
    prof.k_c = sweep.k_c;
    for (int i = 0; i < samples; ++i) {
        const double dk = -radius + 2 * radius * i / (samples - 1);
        prof.dk.push_back(dk);
        prof.f.push_back(sweep.curvature(dk, eps));
    }
    return prof;
}

/// Smallest δk ≤ limit with |F(δk)| ≤ |F(0)|/2, or 0 if the peak is wider than limit.
double half_width(const CriticalSweep& sweep, double eps, double limit) {
    const double half = std::abs(sweep.curvature(0.0, eps)) / 2;
    auto below = [&](double dk) { return std::abs(sweep.curvature(dk, eps)) <= half; };
    double lo = 0, hi = 0;
    for (double dk = limit * 1e-8; dk <= limit; dk *= 2) {
        if (below(dk)) {
            hi = dk;
            break;
        }
        lo = dk;
    }
    if (hi == 0) return 0;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi; ++it) {
        const double mid = (lo + hi) / 2;
        (below(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

double band_gap(Model model, const Momentum2& k, const WalkParams<>& p) {
    const double e = quasienergy(model, k, p);
    return std::min(e, kPi - e);
}

std::vector<GapClosing> find_gap_closings(Model model, const WalkParams<>& p, int grid) {
    if (grid < 64) throw InvalidArgument("find_gap_closings: grid must have at least 64 points per axis");
    const double h = 2 * kPi / grid;
    const auto kg = periodic_grid(grid);
    auto gap = [&](double kx, double ky) { return band_gap(model, Momentum2(kx, ky), p); };
    auto zone_of = [&](const Momentum2& k) {
        return quasienergy(model, k, p) < kPi / 2 ? Zone::Zero : Zone::Pi;
    };
    std::vector<GapClosing> out;

    if (model == Model::Walk1D) {
        std::vector<double> g(grid);
        for (int i = 0; i < grid; ++i) g[i] = gap(kg[i], 0);
        for (int i = 0; i < grid; ++i) {
            const double l = g[(i + grid - 1) % grid], r = g[(i + 1) % grid];
            if (g[i] > l || g[i] > r || g[i] > 4 * h) continue;
            const double k = golden_section_minimize([&](double x) { return gap(x, 0); }, kg[i] - h, kg[i] + h);
            const double gk = gap(k, 0);
            if (gk < kClosingTolerance) push_unique(out, {Momentum2(k, 0), zone_of(Momentum2(k, 0)), gk});
        }
        return out;
    }

    std::vector<double> g(static_cast<std::size_t>(grid) * grid);
    auto at = [&](int i, int j) -> double& { return g[static_cast<std::size_t>((i + grid) % grid) * grid + (j + grid) % grid]; };
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) at(i, j) = gap(kg[i], kg[j]);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double c = at(i, j);
            if (c > 4 * h) continue;
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && at(i + di, j + dj) < c) {
                        minimum = false;
                        break;
                    }
            if (!minimum) continue;
            double x = kg[i], y = kg[j];
            for (int sweep = 0; sweep < 500; ++sweep) {
                const double x0 = x, y0 = y;
                x = golden_section_minimize([&](double t) { return gap(t, y); }, x - h, x + h);
                y = golden_section_minimize([&](double t) { return gap(x, t); }, y - h, y + h);
                if (std::hypot(x - x0, y - y0) < 1e-12 || gap(x, y) < 1e-13) break;
            }
            const double gk = gap(x, y);
            if (gk < kClosingTolerance) push_unique(out, {Momentum2(x, y), zone_of(Momentum2(x, y)), gk});
        }
    }
    return out;
}

LorentzianFit fit_lorentzian(std::span<const double> k, std::span<const double> f, double k_c) {
    LorentzianFit fit = lorentzian_unchecked(k, f, k_c);
    if (fit.r2 < 0.99) throw PoorFit("fit_lorentzian: R² below 0.99");
    return fit;
}

CriticalSweep walk1d_sweep(double beta, bool at_pi) {
    CriticalSweep s;
    s.alpha_c = at_pi ? beta : -beta;
    s.k_c = at_pi ? kPi : 0.0;
    s.dimension = 1;
    s.curvature = [beta, k_c = s.k_c, a_c = s.alpha_c](double dk, double eps) {
        return rotated_curvature_1d(k_c + dk, WalkParams<>{a_c + eps, beta});
    };
    return s;
}

CriticalSweep walk2d_sweep(double beta) {
    CriticalSweep s;
    s.alpha_c = 0;
    s.k_c = kPi / 2;
    s.dimension = 2;
    s.curvature = [beta](double dk, double eps) {
        return curvature_2d(diagonal_slice(kPi / 2 + dk), WalkParams<>{eps, beta});
    };
    return s;
}

CriticalSweep dirac_sweep(int dimension) {
    CriticalSweep s;
    s.dimension = dimension;
    if (dimension == 1)
        s.curvature = [](double dk, double eps) { return berry_connection_1d(dk, eps); };
    else
        s.curvature = [](double dk, double eps) { return berry_curvature_2d_dirac(dk, 0.0, eps); };
    return s;
}

CurvatureProfile peak_profile(const CriticalSweep& sweep, double eps, int samples) {
    constexpr double kMaxRadius = 0.1;
    double radius = kMaxRadius;
    const double hw = half_width(sweep, eps, kMaxRadius);
    if (hw > 0) radius = std::min(0.5 * hw, kMaxRadius);
    CurvatureProfile prof = sample_profile(sweep, eps, radius, samples);
    const LorentzianFit first = lorentzian_unchecked(prof.dk, prof.f, 0.0);
    if (first.xi > 0) radius = std::min(0.5 / first.xi, kMaxRadius);
    prof = sample_profile(sweep, eps, radius, samples);
    prof.fit = fit_lorentzian(prof.dk, prof.f, 0.0);
    return prof;
}

ExponentFit extract_exponents(const CriticalSweep& sweep, double eps_min, double eps_max, int points) {
    if (!(eps_max > eps_min)) throw InvalidArgument("extract_exponents: window needs eps_min < eps_max");
    if (eps_min <= 0) throw WindowTouchesCriticality("extract_exponents: window reaches the critical point");
    if (points < 10) throw InvalidArgument("extract_exponents: window needs at least 10 points");

    const auto eps = logspace(eps_min, eps_max, points);
    std::vector<double> le(points), lf(points), lx(points);
    for (int i = 0; i < points; ++i) {
        double f = 0;
        try {
            f = sweep.curvature(0.0, eps[i]);
        } catch (const ZeroGap&) {
            throw WindowTouchesCriticality("extract_exponents: gap closes inside the window");
        }
        if (!std::isfinite(f) || f == 0) throw WindowTouchesCriticality("extract_exponents: singular sweep point");
        const CurvatureProfile prof = peak_profile(sweep, eps[i]);
        le[i] = std::log(eps[i]);
        lf[i] = std::log(std::abs(f));
        lx[i] = std::log(prof.fit.xi);
    }
    const LinearFit fg = linear_fit(le, lf);
    const LinearFit fn = linear_fit(le, lx);

    ExponentFit out;
    out.alpha_c = sweep.alpha_c;
    out.gamma = -fg.slope;
    out.nu = -fn.slope;
    out.gamma_error = fg.slope_error;
    out.nu_error = fn.slope_error;
    out.eps_min = eps_min;
    out.eps_max = eps_max;
    out.points = points;
    out.dimension = sweep.dimension;
    out.scaling_law_residual = std::abs(out.gamma - sweep.dimension * out.nu);
    return out;
}

double flip_test(const CriticalSweep& sweep, double eps) {
    return sweep.curvature(0.0, -eps) / sweep.curvature(0.0, eps);
}

}  // namespace topocrit
