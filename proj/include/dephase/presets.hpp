// presets.hpp - the (alpha, lambda) curves of the six published figures.
//
// All curves use J = Delta (w/Delta)^alpha exp(-lambda w/Delta) ln^2(w/Delta) at T = 0.
// Figures 1-3 show the coherence / dephasing factor, figures 4-6 the dephasing rate.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dephase/error.hpp"
#include "dephase/run_config.hpp"

namespace dephase {

struct Preset {
    std::string name; // e.g. "fig1e"
    double alpha;
    double lambda;
    GridSpec grid;
    Quantity quantity;
};

namespace detail {

struct FigureSpec {
    int figure;
    std::vector<std::pair<double, double>> curves;
    GridSpec grid;
    Quantity quantity;
};

inline const std::vector<FigureSpec>& figure_specs() {
    using std::exp;
    static const std::vector<FigureSpec> specs = {
        {1,
         {{1.6, 0.3}, {1.6, 0.4}, {1.6, 0.48}, {1.6, 0.6}, {2, 0.8},
          {2, 1}, {2.5, 1.2}, {5, 2}, {5, 2.2}, {3, 3}},
         {0.0, 6.0, 601, GridSpacing::Linear},
         Quantity::Xi},
        {2,
         {{5, 15}, {5, 10}, {5, 7}, {2, 22}, {1.5, 20}, {1.5, 9}, {10, 4.8},
          {10, 4.3}, {1.5, 1}, {10, 3.4}, {1.5, 0.4}, {20, 6.1}, {1.5, 0.2}, {20, 5.55}},
         {exp(-3.0), exp(5.0), 1400, GridSpacing::Log},
         Quantity::Xi},
        {3,
         {{1.5, 1e4}, {1.5, 0.01}, {1.5, 1e-4}, {2.5, 1e4}, {2.5, 1}, {2.5, 0.02}, {2.5, 1e-4},
          {6, 10}, {6, 0.8}, {6, 0.1}, {6, 0.01}, {6, 0.001}, {6, 2e-4}, {6, 3e-5}},
         {exp(exp(-1.0)), exp(exp(5.0)), 4000, GridSpacing::Log},
         Quantity::Xi},
        {4,
         {{2, 1.1}, {0.9, 40}, {1.5, 3}, {0.8, 27}, {1.3, 2.9}, {1.3, 0.7}, {0.8, 17}, {1.1, 2.9},
          {1.1, 1.2}, {0.8, 10}, {0.9, 4.8}, {1, 0.7}, {0.7, 9.5}, {0.8, 4.5}, {2, 0.9}},
         {0.0, 9.0, 901, GridSpacing::Linear},
         Quantity::Gamma},
        {5,
         {{1.5, 12}, {1.5, 5}, {0.8, 12.5}, {0.7, 11.5}, {1.6, 1.9}, {1.6, 1.7}, {2, 1.6}, {2, 1.5},
          {1.4, 1.4}, {1.4, 1.3}, {0.8, 1.2}, {1.3, 1.1}, {1.3, 1}, {1, 0.8}, {1, 0.5}},
         {0.0, 10.0, 1001, GridSpacing::Linear},
         Quantity::Gamma},
        {6,
         {{1, 1e4}, {1, 200}, {1, 0.01}, {10, 20}, {10, 4}, {10, 0.01},
          {15, 5}, {15, 2}, {15, 0.01}, {20, 2}, {20, 1}, {20, 0.001}},
         {exp(1.0 / std::numbers::e), exp(exp(2.6)), 2400, GridSpacing::Log},
         Quantity::Gamma},
    };
    return specs;
}

} // namespace detail

inline std::vector<Preset> all_presets() {
    std::vector<Preset> out;
    for (const auto& f : detail::figure_specs()) {
        for (std::size_t i = 0; i < f.curves.size(); ++i) {
            const std::string name = "fig" + std::to_string(f.figure) + static_cast<char>('a' + i);
            out.push_back({name, f.curves[i].first, f.curves[i].second, f.grid, f.quantity});
        }
    }
    return out;
}

inline Preset find_preset(const std::string& name) {
    for (auto& p : all_presets())
        if (p.name == name) return p;
    throw InvalidParameter("unknown preset '" + name + "'");
}

/// Overwrites the model, bath and grid of `cfg` with the preset.
inline void apply_preset(RunConfig& cfg, const Preset& p) {
    cfg.model = SpectralParams{};
    cfg.model.alpha0 = p.alpha;
    cfg.model.cutoff = p.lambda;
    cfg.model.log_power = 2.0;
    cfg.model.family = LogFamily::CanonicalEvenLog;
    cfg.theta = 0.0;
    cfg.tau_grid = p.grid;
    cfg.quantity = p.quantity;
}

} // namespace dephase
