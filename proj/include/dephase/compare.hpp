// compare.hpp - numeric dynamics against the long-time laws.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "dephase/asymptotics.hpp"
#include "dephase/dynamics.hpp"
#include "dephase/error.hpp"

namespace dephase {

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("fitted_slope: need two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidParameter("fitted_slope: x values coincide");
    return sxy / sxx;
}

struct ComparisonRow {
    double tau;
    double numeric;    // gamma/Delta, Xi, or Xi - Xi(inf) when the constant is finite
    double asymptotic; // the matching part of the law
    double rel_err;
};

struct ComparisonReport {
    AsymptoticExpansion law;
    bool relative_to_constant = false; // numeric column holds Xi - Xi(inf)
    std::vector<ComparisonRow> rows;
    // Slope of ln|tau^{-a} q| against ln ln tau, a the leading tau power, over tau > e.
    std::optional<double> slope_numeric;
    std::optional<double> slope_asymptotic;
    std::size_t failures = 0;
};

/// Evaluates the numeric quantity and the long-time law on `taus`. For the factor with
/// a finite Xi(inf), Xi - Xi(inf) is computed directly as minus the oscillatory part.
inline ComparisonReport compare_asymptotic(const SpectralModel& model, const BathSpec& bath, Quantity q,
                                           const std::vector<double>& taus,
                                           const quad::QuadratureConfig& cfg = {}) {
    ComparisonReport rep;
    rep.law = long_time_law(model, bath, q, cfg);
    const Dynamics dyn(model, bath, cfg);
    rep.relative_to_constant = q == Quantity::Xi && rep.law.constant.has_value();
    std::vector<double> lx, ln_num, ln_asym;
    const double a = rep.law.leading().tau_power;
    for (double tau : taus) {
        if (!(tau > 0.0)) continue;
        ComparisonRow row{tau, 0.0, 0.0, 0.0};
        try {
            if (q == Quantity::Gamma) row.numeric = dyn.rate(tau).value;
            else if (rep.relative_to_constant) row.numeric = -dyn.oscillatory_part(tau).value;
            else row.numeric = dyn.factor(tau).value;
        } catch (const AccuracyError& e) {
            row.numeric = e.partial_value();
            ++rep.failures;
        }
        row.asymptotic = (q == Quantity::Xi && !rep.relative_to_constant) ? rep.law(tau)
                                                                         : rep.law.variable_part(tau);
        row.rel_err = std::abs(row.numeric - row.asymptotic) / std::abs(row.asymptotic);
        rep.rows.push_back(row);
        if (tau > std::numbers::e && row.numeric != 0.0 && row.asymptotic != 0.0) {
            const double scale = std::pow(tau, -a);
            lx.push_back(std::log(std::log(tau)));
            ln_num.push_back(std::log(std::abs(row.numeric * scale)));
            ln_asym.push_back(std::log(std::abs(row.asymptotic * scale)));
        }
    }
    if (lx.size() >= 2 && lx.front() != lx.back()) {
        rep.slope_numeric = fitted_slope(lx, ln_num);
        rep.slope_asymptotic = fitted_slope(lx, ln_asym);
    }
    return rep;
}

} // namespace dephase
