#include "topocrit/crg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "topocrit/errors.hpp"

namespace topocrit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

/// log10 with NaN mapped to +∞ so gapless cells dominate comparisons.
double ridge_height(double sharpness) {
    if (std::isnan(sharpness)) return kInf;
    return std::log10(sharpness);
}

std::vector<Cell> neighbours(const Cell& c, int n) {
    std::vector<Cell> out;
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
            if (!di && !dj) continue;
            const int i = c[0] + di, j = c[1] + dj;
            if (i >= 0 && j >= 0 && i < n && j < n) out.push_back({i, j});
        }
    // edge-adjacent cells first
    std::stable_sort(out.begin(), out.end(), [&](const Cell& a, const Cell& b) {
        return std::abs(a[0] - c[0]) + std::abs(a[1] - c[1]) < std::abs(b[0] - c[0]) + std::abs(b[1] - c[1]);
    });
    return out;
}

}  // namespace

RGStep rg_step(const CurvatureFunction& f, const Momentum2& k0, const Momentum2& ks, const Control& m, double dk,
               double dm, int axis, double denominator_floor) {
    if (axis < 0 || axis > 1) throw InvalidArgument("rg_step: axis must be 0 (alpha) or 1 (beta)");
    if (dk <= 0 || dm <= 0) throw InvalidArgument("rg_step: steps must be positive");
    const double f0 = f(k0, m);
    const double fk = f(k0 + dk * ks, m);
    Control shifted = m;
    shifted(axis) += dm;
    const double fm = f(k0, shifted);

    RGStep s;
    s.numerator = (fk - f0) / (dk * dk);
    s.denominator = (fm - f0) / dm;
    s.diverged = std::abs(s.denominator) < denominator_floor;
    s.value = s.diverged ? kNaN : s.numerator / s.denominator;
    return s;
}

double FlowField::cell() const { return 2 * kPi / n; }

double FlowField::centre(int i) const { return -kPi + (i + 0.5) * cell(); }

std::vector<Momentum2> default_hsps(Model model) {
    if (model == Model::Walk1D) return {Momentum2(0, 0), Momentum2(kPi, 0)};
    if (model == Model::Walk2D)
        return {Momentum2(0, 0), Momentum2(kPi / 2, kPi / 2), Momentum2(kPi / 2, 0), Momentum2(0, kPi / 2)};
    throw InvalidArgument("default_hsps: flow fields are defined for the walk models");
}

FlowField flow_field(Model model, int n, const std::vector<Momentum2>& hsps, const Momentum2& ks,
                     const FlowOptions& options) {
    if (!is_walk(model)) throw InvalidArgument("flow_field: flow fields are defined for the walk models");
    if (n < 64) throw InvalidArgument("flow_field: grid must be at least 64x64");
    const CurvatureFunction f = curvature_function(model);

    FlowField field;
    field.n = n;
    field.hsps = hsps;
    field.ks = ks;
    field.options = options;
    field.layers.assign(hsps.size(), std::vector<RGFlowSample>(static_cast<std::size_t>(n) * n));

    for (std::size_t h = 0; h < hsps.size(); ++h) {
        auto& layer = field.layers[h];
        const long total = static_cast<long>(n) * n;
#pragma omp parallel for schedule(static)
        for (long idx = 0; idx < total; ++idx) {
            RGFlowSample& s = layer[idx];
            s.alpha = field.centre(static_cast<int>(idx / n));
            s.beta = field.centre(static_cast<int>(idx % n));
            const Control m(s.alpha, s.beta);
            try {
                const RGStep a = rg_step(f, hsps[h], ks, m, options.dk, options.dm, 0, options.denominator_floor);
                const RGStep b = rg_step(f, hsps[h], ks, m, options.dk, options.dm, 1, options.denominator_floor);
                s.dalpha_dl = a.value;
                s.dbeta_dl = b.value;
                s.sharpness = std::abs(a.numerator);
                if (a.diverged || b.diverged) {
                    s.log_rate = kInf;
                    s.diverged = true;
                } else {
                    const double rate = std::hypot(a.value, b.value);
                    s.log_rate = std::log10(rate);
                    s.diverged = rate > options.rate_threshold;
                }
            } catch (const ZeroGap&) {
                s.dalpha_dl = s.dbeta_dl = s.sharpness = kNaN;
                s.log_rate = kInf;
                s.diverged = true;
                s.gapless = true;
            }
        }
    }
    return field;
}

std::vector<CriticalLine> detect_critical_lines(const FlowField& field, double rate_threshold) {
    const int n = field.n;
    const double floor_height = std::log10(rate_threshold);
    std::vector<CriticalLine> lines;

    for (std::size_t h = 0; h < field.hsps.size(); ++h) {
        std::vector<char> mark(static_cast<std::size_t>(n) * n, 0);
        auto id = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (field.at(h, i, j).gapless) mark[id(i, j)] = 1;

        for (int axis = 0; axis < 2; ++axis) {
            const int di = axis == 0 ? 1 : 0, dj = 1 - di;
            auto flow = [&](int i, int j) {
                const auto& s = field.at(h, i, j);
                return axis == 0 ? s.dalpha_dl : s.dbeta_dl;
            };
            auto height = [&](int i, int j) {
                if (i < 0 || j < 0 || i >= n || j >= n) return -kInf;
                return ridge_height(field.at(h, i, j).sharpness);
            };
            for (int i = 0; i + di < n; ++i)
                for (int j = 0; j + dj < n; ++j) {
                    const int i1 = i + di, j1 = j + dj;
                    // flow runs away from the edge on both sides
                    if (!(flow(i, j) < 0 && flow(i1, j1) > 0)) continue;
                    const double h0 = height(i, j), h1 = height(i1, j1);
                    const double inner = std::max(h0, h1);
                    const double outer = std::max(height(i - di, j - dj), height(i1 + di, j1 + dj));
                    if (inner > outer && inner >= floor_height) mark[h0 >= h1 ? id(i, j) : id(i1, j1)] = 1;
                }
        }

        std::vector<char> seen(mark.size(), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!mark[id(i, j)] || seen[id(i, j)]) continue;
                std::vector<Cell> comp;
                std::queue<Cell> q;
                q.push({i, j});
                seen[id(i, j)] = 1;
                while (!q.empty()) {
                    const Cell c = q.front();
                    q.pop();
                    comp.push_back(c);
                    for (const Cell& nb : neighbours(c, n))
                        if (mark[id(nb[0], nb[1])] && !seen[id(nb[0], nb[1])]) {
                            seen[id(nb[0], nb[1])] = 1;
                            q.push(nb);
                        }
                }
                std::sort(comp.begin(), comp.end());

                // greedy chain from the cell with the fewest component neighbours
                std::vector<char> used(mark.size(), 0);
                auto free_degree = [&](const Cell& c) {
                    int d = 0;
                    for (const Cell& nb : neighbours(c, n))
                        if (mark[id(nb[0], nb[1])] && !used[id(nb[0], nb[1])]) ++d;
                    return d;
                };
                Cell cur = *std::min_element(comp.begin(), comp.end(), [&](const Cell& a, const Cell& b) {
                    return free_degree(a) < free_degree(b);
                });
                CriticalLine line;
                line.hsp = h;
                line.k0 = field.hsps[h];
                line.cells = comp;
                for (;;) {
                    used[id(cur[0], cur[1])] = 1;
                    line.points.emplace_back(field.centre(cur[0]), field.centre(cur[1]));
                    const Cell* next = nullptr;
                    int best = 9;
                    auto nbs = neighbours(cur, n);
                    for (const Cell& nb : nbs) {
                        if (!mark[id(nb[0], nb[1])] || used[id(nb[0], nb[1])]) continue;
                        const int d = free_degree(nb);
                        if (d < best) {
                            best = d;
                            next = &nb;
                        }
                    }
                    if (!next) break;
                    cur = *next;
                }
                lines.push_back(std::move(line));
            }
    }
    return lines;
}

}  // namespace topocrit
