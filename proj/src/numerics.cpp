#include "topocrit/numerics.hpp"

#include <numbers>

#include "topocrit/errors.hpp"

namespace topocrit {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw InvalidArgument("linear_fit: need at least two paired samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw InvalidArgument("linear_fit: degenerate abscissae");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss_res += r * r;
    }
    fit.rms_residual = std::sqrt(ss_res / n);
    const double scale = std::max(std::abs(my), 1.0);
    fit.r2 = syy <= 1e-28 * scale * scale * n ? 1.0 : 1.0 - ss_res / syy;
    fit.slope_error = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    return fit;
}

std::vector<double> logspace(double lo, double hi, int n) {
    if (n < 2 || lo <= 0 || hi <= lo) throw InvalidArgument("logspace: need 0 < lo < hi and n >= 2");
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

std::vector<double> periodic_grid(int n) {
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j) k[j] = 2 * std::numbers::pi * j / n;
    return k;
}

std::vector<double> cell_centred_grid(int n) {
    std::vector<double> g(n);
    const double h = 2 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) g[i] = -std::numbers::pi + (i + 0.5) * h;
    return g;
}

}  // namespace topocrit
