// run_config.hpp - run configuration for the command-line tool and its JSON form.
//
// Schema (every key optional, defaults shown by RunConfig{}):
//   {
//     "model":      {"alpha0": 1, "log_power": 0, "family": "CanonicalEvenLog",
//                    "cutoff": 1, "amplitude": 1, "scale": 1},
//     "theta":      0,
//     "tau_grid":   {"start": 0, "stop": 10, "points": 101, "spacing": "linear" | "log"},
//     "quadrature": {"rel_tol": 1e-10, "abs_tol": 1e-14,
//                    "max_zero_intervals": 100000, "acceleration_depth": 30},
//     "quantity":   "Gamma" | "Xi",
//     "truncation_tau": 1e4,
//     "output":     "series.csv"
//   }
#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dephase/asymptotics.hpp"
#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/spectral_density.hpp"

namespace dephase {

enum class GridSpacing { Linear, Log };

struct GridSpec {
    double start = 0.0;
    double stop = 10.0;
    int points = 101;
    GridSpacing spacing = GridSpacing::Linear;

    bool operator==(const GridSpec&) const = default;

    void validate() const {
        if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidParameter("tau grid bounds must be finite");
        if (points < 1) throw InvalidParameter("tau grid needs at least one point");
        if (start < 0.0) throw InvalidParameter("tau grid must start at tau >= 0");
        if (stop < start) throw InvalidParameter("tau grid stop must not precede start");
        if (points > 1 && stop == start) throw InvalidParameter("tau grid with several points needs stop > start");
        if (spacing == GridSpacing::Log && !(start > 0.0))
            throw InvalidParameter("log tau grid needs start > 0");
    }

    std::vector<double> build() const {
        validate();
        std::vector<double> g;
        g.reserve(static_cast<std::size_t>(points));
        if (points == 1) return {start};
        for (int i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / (points - 1);
            if (spacing == GridSpacing::Linear) g.push_back(start + (stop - start) * f);
            else g.push_back(std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f));
        }
        g.front() = start;
        g.back() = stop;
        return g;
    }
};

struct RunConfig {
    SpectralParams model;
    double theta = 0.0;
    GridSpec tau_grid;
    quad::QuadratureConfig quadrature;
    Quantity quantity = Quantity::Gamma;
    double truncation_tau = 1e4;
    std::string output;

    /// Runs every module constructor so that bad input fails before any computation.
    void validate() const {
        SpectralModel m(model);
        BathSpec b(theta);
        tau_grid.validate();
        quadrature.validate();
        if (!(truncation_tau > 0.0) || !std::isfinite(truncation_tau))
            throw InvalidParameter("truncation_tau must be positive");
    }
};

inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.model == b.model && a.theta == b.theta && a.tau_grid == b.tau_grid &&
           a.quadrature.rel_tol == b.quadrature.rel_tol && a.quadrature.abs_tol == b.quadrature.abs_tol &&
           a.quadrature.max_zero_intervals == b.quadrature.max_zero_intervals &&
           a.quadrature.acceleration_depth == b.quadrature.acceleration_depth &&
           a.quantity == b.quantity && a.truncation_tau == b.truncation_tau && a.output == b.output;
}

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["model"] = {{"alpha0", c.model.alpha0},       {"log_power", c.model.log_power},
                  {"family", to_string(c.model.family)}, {"cutoff", c.model.cutoff},
                  {"amplitude", c.model.amplitude}, {"scale", c.model.scale}};
    j["theta"] = c.theta;
    j["tau_grid"] = {{"start", c.tau_grid.start},
                     {"stop", c.tau_grid.stop},
                     {"points", c.tau_grid.points},
                     {"spacing", c.tau_grid.spacing == GridSpacing::Log ? "log" : "linear"}};
    j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                       {"abs_tol", c.quadrature.abs_tol},
                       {"max_zero_intervals", c.quadrature.max_zero_intervals},
                       {"acceleration_depth", c.quadrature.acceleration_depth}};
    j["quantity"] = to_string(c.quantity);
    j["truncation_tau"] = c.truncation_tau;
    j["output"] = c.output;
    return j;
}

namespace detail {

template <class T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("config key '") + key + "': " + e.what());
    }
}

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InvalidParameter("unknown config key '" + where + it.key() + "'");
    }
}

} // namespace detail

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
    detail::reject_unknown(j, {"model", "theta", "tau_grid", "quadrature", "quantity", "truncation_tau", "output"}, "");
    RunConfig c;
    if (j.contains("model")) {
        const auto& m = j.at("model");
        if (!m.is_object()) throw InvalidParameter("config key 'model' must be an object");
        detail::reject_unknown(m, {"alpha0", "log_power", "family", "cutoff", "amplitude", "scale"}, "model.");
        detail::read_key(m, "alpha0", c.model.alpha0);
        detail::read_key(m, "log_power", c.model.log_power);
        std::string fam = to_string(c.model.family);
        detail::read_key(m, "family", fam);
        c.model.family = parse_log_family(fam);
        detail::read_key(m, "cutoff", c.model.cutoff);
        detail::read_key(m, "amplitude", c.model.amplitude);
        detail::read_key(m, "scale", c.model.scale);
    }
    detail::read_key(j, "theta", c.theta);
    if (j.contains("tau_grid")) {
        const auto& g = j.at("tau_grid");
        if (!g.is_object()) throw InvalidParameter("config key 'tau_grid' must be an object");
        detail::reject_unknown(g, {"start", "stop", "points", "spacing"}, "tau_grid.");
        detail::read_key(g, "start", c.tau_grid.start);
        detail::read_key(g, "stop", c.tau_grid.stop);
        detail::read_key(g, "points", c.tau_grid.points);
        std::string sp = c.tau_grid.spacing == GridSpacing::Log ? "log" : "linear";
        detail::read_key(g, "spacing", sp);
        if (sp == "log") c.tau_grid.spacing = GridSpacing::Log;
        else if (sp == "linear") c.tau_grid.spacing = GridSpacing::Linear;
        else throw InvalidParameter("tau_grid.spacing must be 'linear' or 'log'");
    }
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        if (!q.is_object()) throw InvalidParameter("config key 'quadrature' must be an object");
        detail::reject_unknown(q, {"rel_tol", "abs_tol", "max_zero_intervals", "acceleration_depth"}, "quadrature.");
        detail::read_key(q, "rel_tol", c.quadrature.rel_tol);
        detail::read_key(q, "abs_tol", c.quadrature.abs_tol);
        detail::read_key(q, "max_zero_intervals", c.quadrature.max_zero_intervals);
        detail::read_key(q, "acceleration_depth", c.quadrature.acceleration_depth);
    }
    std::string qn = to_string(c.quantity);
    detail::read_key(j, "quantity", qn);
    if (qn == "Xi") c.quantity = Quantity::Xi;
    else if (qn == "Gamma") c.quantity = Quantity::Gamma;
    else throw InvalidParameter("quantity must be 'Xi' or 'Gamma'");
    detail::read_key(j, "truncation_tau", c.truncation_tau);
    detail::read_key(j, "output", c.output);
    return c;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameter("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

} // namespace dephase
