#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "topocrit/types.hpp"

namespace topocrit {

enum class Model { Walk1D, Walk2D, Dirac1D, Dirac2D };

Model parse_model(std::string_view name);
std::string_view model_name(Model model);
int dimension(Model model);
bool is_walk(Model model);

/// Control parameters: (α, β) for walks, (M, unused) for Dirac models.
using Control = Eigen::Vector2d;

/// Curvature function F(k, M). One-dimensional models read k.x() only.
using CurvatureFunction = std::function<double(const Momentum2& k, const Control& m)>;

CurvatureFunction curvature_function(Model model);

}  // namespace topocrit
