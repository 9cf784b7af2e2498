#include "topocrit/models.hpp"

#include "topocrit/band_geometry.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

namespace topocrit {

Model parse_model(std::string_view name) {
    if (name == "walk1d") return Model::Walk1D;
    if (name == "walk2d") return Model::Walk2D;
    if (name == "dirac1d") return Model::Dirac1D;
    if (name == "dirac2d") return Model::Dirac2D;
    throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

std::string_view model_name(Model model) {
    switch (model) {
        case Model::Walk1D: return "walk1d";
        case Model::Walk2D: return "walk2d";
        case Model::Dirac1D: return "dirac1d";
        case Model::Dirac2D: return "dirac2d";
    }
    return "";
}

int dimension(Model model) { return model == Model::Walk1D || model == Model::Dirac1D ? 1 : 2; }

bool is_walk(Model model) { return model == Model::Walk1D || model == Model::Walk2D; }

CurvatureFunction curvature_function(Model model) {
    switch (model) {
        case Model::Walk1D:
            return [](const Momentum2& k, const Control& m) {
                return rotated_curvature_1d(k.x(), WalkParams<>{m.x(), m.y()});
            };
        case Model::Walk2D:
            return [](const Momentum2& k, const Control& m) { return curvature_2d(k, WalkParams<>{m.x(), m.y()}); };
        case Model::Dirac1D:
            return [](const Momentum2& k, const Control& m) { return berry_connection_1d(k.x(), m.x()); };
        case Model::Dirac2D:
            return [](const Momentum2& k, const Control& m) { return berry_curvature_2d_dirac(k.x(), k.y(), m.x()); };
    }
    throw InvalidArgument("curvature_function: unknown model");
}

}  // namespace topocrit
