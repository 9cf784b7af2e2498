#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "topocrit/models.hpp"
#include "topocrit/types.hpp"

namespace topocrit {

struct RGStep {
    double value = 0;        // dM_i/dℓ
    double numerator = 0;    // [F(k₀ + Δk k̂_s) − F(k₀)]/Δk²
    double denominator = 0;  // [F(M + ΔM_i) − F(M)]/ΔM_i
    bool diverged = false;
};

/// One component of the numerical RG flow at M along axis i ∈ {0: α, 1: β}.
RGStep rg_step(const CurvatureFunction& f, const Momentum2& k0, const Momentum2& ks, const Control& m, double dk,
               double dm, int axis, double denominator_floor = 1e-12);

struct FlowOptions {
    double dk = 1e-2;
    double dm = 1e-3;
    double rate_threshold = 1e3;
    double denominator_floor = 1e-12;
};

struct RGFlowSample {
    double alpha = 0;
    double beta = 0;
    double dalpha_dl = 0;
    double dbeta_dl = 0;
    double log_rate = 0;   // log10 |dM/dℓ|
    double sharpness = 0;  // |∂²_k F|/2 estimate, the RG numerator
    bool diverged = false;
    bool gapless = false;
};

/// Flow on a cell-centred n×n grid over (α, β) ∈ [−π, π)², one layer per HSP.
struct FlowField {
    int n = 0;
    std::vector<Momentum2> hsps;
    Momentum2 ks = Momentum2::UnitX();
    FlowOptions options;
    std::vector<std::vector<RGFlowSample>> layers;  // layers[h][i_alpha * n + i_beta]

    double cell() const;
    double centre(int i) const;
    const RGFlowSample& at(std::size_t hsp, int i_alpha, int i_beta) const {
        return layers[hsp][static_cast<std::size_t>(i_alpha) * n + i_beta];
    }
};

std::vector<Momentum2> default_hsps(Model model);

FlowField flow_field(Model model, int n, const std::vector<Momentum2>& hsps, const Momentum2& ks,
                     const FlowOptions& options = {});

using Cell = std::array<int, 2>;  // (i_alpha, i_beta)

struct CriticalLine {
    std::size_t hsp = 0;
    Momentum2 k0;
    std::vector<Cell> cells;                // ordered along the line
    std::vector<Eigen::Vector2d> points;    // (α, β) of the cell centres
};

/// Cells where the flow runs away on both sides of a sharpness ridge above `rate_threshold`,
/// plus gapless cells, linked with 8-neighbour connectivity and ordered into polylines.
std::vector<CriticalLine> detect_critical_lines(const FlowField& field, double rate_threshold = 1e3);

}  // namespace topocrit
