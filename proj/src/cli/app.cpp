#include "topocrit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "output.hpp"
#include "topocrit/band_geometry.hpp"
#include "topocrit/correlation.hpp"
#include "topocrit/crg.hpp"
#include "topocrit/criticality.hpp"
#include "topocrit/errors.hpp"
#include "topocrit/invariants.hpp"
#include "topocrit/models.hpp"
#include "topocrit/numerics.hpp"
#include "topocrit/quantum_walk_1d.hpp"
#include "topocrit/quantum_walk_2d.hpp"

namespace topocrit::cli {
namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

struct RunConfig {
    std::string command;
    std::string model = "walk1d";
    std::optional<double> alpha;
    std::optional<double> beta;
    double mass = 0.5;
    std::vector<double> sweep;
    int grid = 0;
    std::string window = "0.001,0.1";
    int points = 20;
    std::string kc = "0";
    std::string slice = "diagonal";
    int rmax = 60;
    double threshold = 1e3;
    int cell_grid = 0;
    std::string out;
    std::string config;
    bool strict = false;

    Model kind() const { return parse_model(model); }
    double alpha_value() const { return alpha.value_or(0.3); }
    double beta_value() const { return beta.value_or(kind() == Model::Walk2D ? kPi / 2 : 0.0); }
    WalkParams<> params() const { return {alpha_value(), beta_value()}; }
    int grid_or(int fallback) const { return grid > 0 ? grid : fallback; }

    json echo() const {
        json j;
        j["command"] = command;
        j["model"] = model;
        j["alpha"] = alpha_value();
        j["beta"] = beta_value();
        j["mass"] = mass;
        j["sweep"] = sweep;
        j["grid"] = grid;
        j["window"] = window;
        j["points"] = points;
        j["kc"] = kc;
        j["slice"] = slice;
        j["rmax"] = rmax;
        j["threshold"] = threshold;
        j["cell_grid"] = cell_grid;
        j["strict"] = strict;
        return j;
    }

    std::string comment() const { return fmt::format("topocrit {} config={}", kVersion, echo().dump()); }
};

/// Raised when --strict meets a gap closing.
struct StrictAbort : Error {
    using Error::Error;
};

std::pair<double, double> parse_window(const std::string& text) {
    std::stringstream ss(text);
    std::string a, b, rest;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || std::getline(ss, rest, ','))
        throw InvalidArgument("malformed window '" + text + "', expected a,b");
    std::size_t ia = 0, ib = 0;
    double lo = 0, hi = 0;
    try {
        lo = std::stod(a, &ia);
        hi = std::stod(b, &ib);
    } catch (const std::exception&) {
        throw InvalidArgument("malformed window '" + text + "'");
    }
    if (ia != a.size() || ib != b.size()) throw InvalidArgument("malformed window '" + text + "'");
    if (!(lo < hi)) throw InvalidArgument("malformed window '" + text + "': need eps_min < eps_max");
    return {lo, hi};
}

json generator_header(const RunConfig& cfg) {
    json j;
    j["generator"] = fmt::format("topocrit {}", kVersion);
    j["config"] = cfg.echo();
    return j;
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
    OutputTarget target(path, out);
    target.stream() << j.dump(2) << '\n';
}

/// Evaluates f, mapping a gap closing to NaN (or aborting under --strict).
class GapPolicy {
public:
    explicit GapPolicy(bool strict) : strict_(strict) {}

    template <typename F>
    double operator()(F&& f) {
        try {
            return f();
        } catch (const ZeroGap& e) {
            if (strict_) throw StrictAbort(e.what());
            ++hits_;
            return std::numeric_limits<double>::quiet_NaN();
        }
    }

    void report(std::ostream& err) const {
        if (hits_) err << "warning: " << hits_ << " grid point(s) at a gap closing written as NaN\n";
    }

private:
    bool strict_;
    long hits_ = 0;
};

int cmd_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Model model = cfg.kind();
    const bool two_d = dimension(model) == 2;
    const bool sliced = model == Model::Walk2D && cfg.slice == "diagonal";
    if (cfg.slice != "diagonal" && cfg.slice != "full") throw InvalidArgument("slice must be diagonal or full");
    const int n = cfg.grid_or(two_d && !sliced ? 128 : 1024);
    std::vector<double> values = cfg.sweep;
    if (values.empty()) values.push_back(is_walk(model) ? cfg.alpha_value() : cfg.mass);
    if (values.size() > 1 && cfg.out.empty()) throw InvalidArgument("a sweep needs --out for its per-value files");

    GapPolicy gaps(cfg.strict);
    for (std::size_t s = 0; s < values.size(); ++s) {
        const double v = values[s];
        const std::string path = values.size() > 1 ? with_suffix(cfg.out, fmt::format("_{}", s)) : cfg.out;
        OutputTarget target(path, out);
        RunConfig echo = cfg;
        if (is_walk(model)) echo.alpha = v;
        else echo.mass = v;
        const WalkParams<> p{v, cfg.beta_value()};

        std::vector<std::string> cols = two_d && !sliced ? std::vector<std::string>{"kx", "ky", "F", "E_upper"}
                                        : sliced         ? std::vector<std::string>{"kx", "F", "E_upper"}
                                                         : std::vector<std::string>{"k", "F", "E_upper"};
        CsvWriter csv(target.stream(), echo.comment(), cols);
        const auto grid = is_walk(model) ? periodic_grid(n) : [&] {
            auto g = periodic_grid(n);
            for (double& k : g) k -= kPi;
            return g;
        }();

        switch (model) {
            case Model::Walk1D:
                for (double k : grid)
                    csv.row({k, gaps([&] { return rotated_curvature_1d(k, p); }), energy_1d(k, p)});
                break;
            case Model::Walk2D:
                if (sliced) {
                    for (double k : grid) {
                        const Momentum2 q = diagonal_slice(k);
                        csv.row({k, gaps([&] { return curvature_2d(q, p); }), energy_2d(q, p)});
                    }
                } else {
                    for (double kx : grid)
                        for (double ky : grid) {
                            const Momentum2 q(kx, ky);
                            csv.row({kx, ky, gaps([&] { return curvature_2d(q, p); }), energy_2d(q, p)});
                        }
                }
                break;
            case Model::Dirac1D:
                for (double k : grid)
                    csv.row({k, gaps([&] { return berry_connection_1d(k, v); }), dirac_d_1d(k, v).norm()});
                break;
            case Model::Dirac2D:
                for (double kx : grid)
                    for (double ky : grid)
                        csv.row({kx, ky, gaps([&] { return berry_curvature_2d_dirac(kx, ky, v); }),
                                 dirac_d_2d(kx, ky, v).norm()});
                break;
        }
    }
    gaps.report(err);
    return 0;
}

int cmd_exponents(const RunConfig& cfg, std::ostream& out) {
    const auto [lo, hi] = parse_window(cfg.window);
    const Model model = cfg.kind();
    CriticalSweep sweep;
    switch (model) {
        case Model::Walk1D:
            if (cfg.kc != "0" && cfg.kc != "pi") throw InvalidArgument("kc must be 0 or pi");
            sweep = walk1d_sweep(cfg.beta_value(), cfg.kc == "pi");
            break;
        case Model::Walk2D: sweep = walk2d_sweep(cfg.beta_value()); break;
        default: sweep = dirac_sweep(dimension(model)); break;
    }
    const ExponentFit fit = extract_exponents(sweep, lo, hi, cfg.points);

    json j = generator_header(cfg);
    j["alpha_c"] = fit.alpha_c;
    j["gamma"] = fit.gamma;
    j["nu"] = fit.nu;
    j["errors"] = {{"gamma", fit.gamma_error}, {"nu", fit.nu_error}};
    j["scaling_law_residual"] = fit.scaling_law_residual;
    j["window"] = {fit.eps_min, fit.eps_max};
    j["points"] = fit.points;
    j["dimension"] = fit.dimension;
    write_json(j, cfg.out, out);
    return 0;
}

int cmd_correlation(const RunConfig& cfg, std::ostream& out) {
    const Model model = cfg.kind();
    CorrelationSeries s;
    if (model == Model::Walk1D) {
        s = wannier_correlation_1d(cfg.params(), cfg.rmax, cfg.grid_or(4096));
    } else if (model == Model::Walk2D) {
        if (cfg.slice != "diagonal" && cfg.slice != "full") throw InvalidArgument("slice must be diagonal or full");
        const bool diag = cfg.slice == "diagonal";
        s = wannier_correlation_2d(cfg.params(), cfg.rmax, cfg.grid_or(diag ? 4096 : 512),
                                   diag ? Slice::Diagonal : Slice::FullZone);
    } else {
        throw InvalidArgument("correlation is defined for the walk models");
    }
    OutputTarget target(cfg.out, out);
    CsvWriter csv(target.stream(), cfg.comment(), {"R", "F_tilde"});
    for (std::size_t i = 0; i < s.r.size(); ++i) csv.row({static_cast<double>(s.r[i]), s.value[i]});
    return 0;
}

int cmd_crg(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) throw InvalidArgument("crg writes one file per HSP and needs --out");
    const Model model = cfg.kind();
    FlowOptions opt;
    opt.rate_threshold = cfg.threshold;
    const auto hsps = default_hsps(model);
    const FlowField field = flow_field(model, cfg.grid_or(128), hsps, Momentum2::UnitX(), opt);

    for (std::size_t h = 0; h < hsps.size(); ++h) {
        OutputTarget target(with_suffix(cfg.out, fmt::format("_hsp{}", h)), out);
        CsvWriter csv(target.stream(), cfg.comment() + fmt::format(" hsp=({},{})", format_number(hsps[h].x()),
                                                                   format_number(hsps[h].y())),
                      {"alpha", "beta", "dalpha_dl", "dbeta_dl", "log_rate", "diverged"});
        for (const auto& s : field.layers[h])
            csv.row({s.alpha, s.beta, s.dalpha_dl, s.dbeta_dl, s.log_rate, s.diverged ? 1.0 : 0.0});
    }

    json j = generator_header(cfg);
    j["hsps"] = json::array();
    for (const auto& k : hsps) j["hsps"].push_back({k.x(), k.y()});
    j["lines"] = json::array();
    for (const auto& line : detect_critical_lines(field, cfg.threshold)) {
        json l;
        l["hsp"] = line.hsp;
        l["k0"] = {line.k0.x(), line.k0.y()};
        l["cells"] = line.cells.size();
        l["points"] = json::array();
        for (const auto& pt : line.points) l["points"].push_back({pt.x(), pt.y()});
        j["lines"].push_back(l);
    }
    write_json(j, with_suffix(cfg.out, "_lines", ".json"), out);
    return 0;
}

int cmd_invariant(const RunConfig& cfg, std::ostream& out) {
    const Model model = cfg.kind();
    InvariantResult r;
    if (model == Model::Walk1D) r = winding_number_1d(cfg.params(), cfg.grid_or(4096));
    else if (model == Model::Walk2D) r = chern_number_2d(cfg.params(), cfg.grid_or(256));
    else throw InvalidArgument("invariant is defined for the walk models");

    json j = generator_header(cfg);
    j["raw"] = r.raw;
    j["rounded"] = r.rounded;
    j["defect"] = r.defect;
    j["N"] = r.n;
    write_json(j, cfg.out, out);
    return 0;
}

int cmd_phase_diagram(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Model model = cfg.kind();
    if (!is_walk(model)) throw InvalidArgument("phase-diagram is defined for the walk models");
    const int n = cfg.grid_or(128);
    const int m = cfg.cell_grid > 0 ? cfg.cell_grid : (model == Model::Walk1D ? 512 : 64);
    const auto centres = cell_centred_grid(n);
    const auto k = periodic_grid(m);

    GapPolicy gaps(cfg.strict);
    OutputTarget target(cfg.out, out);
    CsvWriter csv(target.stream(), cfg.comment(), {"alpha", "beta", "invariant", "raw", "defect"});
    std::vector<double> f1(m);
    Eigen::MatrixXd f2(m, m);
    for (double a : centres)
        for (double b : centres) {
            const WalkParams<> p{a, b};
            const double raw = gaps([&] {
                if (model == Model::Walk1D) {
                    for (int j = 0; j < m; ++j) f1[j] = rotated_curvature_1d(k[j], p);
                    return winding_integral(f1);
                }
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) f2(i, j) = curvature_2d(Momentum2(k[i], k[j]), p);
                return chern_integral(f2);
            });
            const double rounded = std::isnan(raw) ? raw : std::round(raw);
            csv.row({a, b, rounded, raw, std::abs(raw - rounded)});
        }
    gaps.report(err);
    return 0;
}

void apply_config_file(RunConfig& cfg, CLI::App& app) {
    std::ifstream in(cfg.config);
    if (!in) throw InvalidArgument("cannot read config file '" + cfg.config + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config file: ") + e.what());
    }
    const std::map<std::string, std::function<void(const json&)>> setters = {
        {"model", [&](const json& v) { cfg.model = v.get<std::string>(); }},
        {"alpha", [&](const json& v) { cfg.alpha = v.get<double>(); }},
        {"beta", [&](const json& v) { cfg.beta = v.get<double>(); }},
        {"mass", [&](const json& v) { cfg.mass = v.get<double>(); }},
        {"sweep", [&](const json& v) { cfg.sweep = v.get<std::vector<double>>(); }},
        {"grid", [&](const json& v) { cfg.grid = v.get<int>(); }},
        {"window", [&](const json& v) { cfg.window = v.get<std::string>(); }},
        {"points", [&](const json& v) { cfg.points = v.get<int>(); }},
        {"kc", [&](const json& v) { cfg.kc = v.get<std::string>(); }},
        {"slice", [&](const json& v) { cfg.slice = v.get<std::string>(); }},
        {"rmax", [&](const json& v) { cfg.rmax = v.get<int>(); }},
        {"threshold", [&](const json& v) { cfg.threshold = v.get<double>(); }},
        {"cell-grid", [&](const json& v) { cfg.cell_grid = v.get<int>(); }},
        {"out", [&](const json& v) { cfg.out = v.get<std::string>(); }},
        {"strict", [&](const json& v) { cfg.strict = v.get<bool>(); }},
    };
    for (const auto& [key, value] : j.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw InvalidArgument("config file: unknown key '" + key + "'");
        if (app.count("--" + key) > 0) continue;  // flags win
        try {
            it->second(value);
        } catch (const json::exception&) {
            throw InvalidArgument("config file: bad value for '" + key + "'");
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Critical behavior and curvature renormalization of topological quantum walks", "topocrit"};
    app.set_version_flag("--version", std::string("topocrit ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--model", cfg.model, "walk1d | walk2d | dirac1d | dirac2d")
        ->check(CLI::IsMember({"walk1d", "walk2d", "dirac1d", "dirac2d"}))
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "rotation angle alpha [default 0.3]");
    app.add_option("--beta", cfg.beta, "rotation angle beta [default 0 for walk1d, pi/2 for walk2d]");
    app.add_option("--mass", cfg.mass, "Dirac mass M")->capture_default_str();
    app.add_option("--sweep", cfg.sweep, "curvature: list of alpha (walks) or M (Dirac) values, one file each")
        ->delimiter(',');
    app.add_option("--grid", cfg.grid,
                   "grid points per axis [curvature 1024 (2D full 128), correlation 4096 (2D full 512), "
                   "invariant 4096/256, crg and phase-diagram 128]");
    app.add_option("--window", cfg.window, "exponents: distance window eps_min,eps_max")->capture_default_str();
    app.add_option("--points", cfg.points, "exponents: log-spaced window points")->capture_default_str();
    app.add_option("--kc", cfg.kc, "exponents (walk1d): critical momentum 0 or pi")->capture_default_str();
    app.add_option("--slice", cfg.slice, "walk2d: diagonal (k_y = -k_x) or full")->capture_default_str();
    app.add_option("--rmax", cfg.rmax, "correlation: largest R")->capture_default_str();
    app.add_option("--threshold", cfg.threshold, "crg: divergence threshold")->capture_default_str();
    app.add_option("--cell-grid", cfg.cell_grid, "phase-diagram: BZ grid per cell [512 for walk1d, 64 for walk2d]");
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    app.add_option("--config", cfg.config, "JSON file with option values; flags take precedence");
    app.add_flag("--strict", cfg.strict, "abort with exit code 2 at the first gap closing");

    for (const char* name : {"curvature", "exponents", "correlation", "crg", "invariant", "phase-diagram"})
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
    app.get_subcommand("curvature")->description("curvature function profile (CSV)");
    app.get_subcommand("exponents")->description("critical exponents gamma and nu (JSON)");
    app.get_subcommand("correlation")->description("Wannier-state correlation function (CSV)");
    app.get_subcommand("crg")->description("RG flow field per HSP (CSV) and critical lines (JSON)");
    app.get_subcommand("invariant")->description("winding or Chern number (JSON)");
    app.get_subcommand("phase-diagram")->description("invariant on an (alpha, beta) grid (CSV)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (!cfg.config.empty()) apply_config_file(cfg, app);
        parse_model(cfg.model);
        if (cfg.command == "curvature") return cmd_curvature(cfg, out, err);
        if (cfg.command == "exponents") return cmd_exponents(cfg, out);
        if (cfg.command == "correlation") return cmd_correlation(cfg, out);
        if (cfg.command == "crg") return cmd_crg(cfg, out);
        if (cfg.command == "invariant") return cmd_invariant(cfg, out);
        if (cfg.command == "phase-diagram") return cmd_phase_diagram(cfg, out, err);
    } catch (const StrictAbort& e) {
        err << "error: gap closing in --strict mode: " << e.what() << '\n';
        return 2;
    } catch (const ZeroGap& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace topocrit::cli
