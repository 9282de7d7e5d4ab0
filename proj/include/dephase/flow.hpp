// flow.hpp - direction of the long-time information flow and the BLP measure.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dephase/asymptotics.hpp"
#include "dephase/dynamics.hpp"
#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/spectral_density.hpp"

namespace dephase {

enum class FlowDirection { BackFlow, ForwardFlow, Indeterminate };
enum class TemperatureClass { Zero, Positive };

inline std::string to_string(FlowDirection d) {
    switch (d) {
        case FlowDirection::BackFlow: return "BackFlow";
        case FlowDirection::ForwardFlow: return "ForwardFlow";
        default: return "Indeterminate";
    }
}

struct FlowClassification {
    FlowDirection direction = FlowDirection::Indeterminate;
    int leading_sign = 0;
    std::optional<Regime> regime;
    std::optional<int> interval_index; // n of the back-flow window, when BackFlow
    TemperatureClass temperature_class = TemperatureClass::Zero;
    double leading_coefficient = 0.0;
    std::string note;
};

/// Sign of the leading long-time coefficient of gamma.
inline FlowClassification classify_long_time_flow(const SpectralModel& model, const BathSpec& bath) {
    FlowClassification out;
    out.temperature_class = bath.thermal() ? TemperatureClass::Positive : TemperatureClass::Zero;
    AsymptoticExpansion law;
    try {
        law = long_time_law(model, bath, Quantity::Gamma);
    } catch (const UnsupportedRegime& e) {
        out.note = e.what();
        return out;
    }
    out.regime = law.regime;
    const double c = law.leading().coeff;
    out.leading_coefficient = c;
    out.leading_sign = (c > 0.0) - (c < 0.0);
    if (out.leading_sign < 0) {
        out.direction = FlowDirection::BackFlow;
        const double shift = bath.thermal() ? 3.0 : 2.0;
        out.interval_index = static_cast<int>(std::floor((model.alpha0() - shift) / 4.0));
    } else if (out.leading_sign > 0) {
        out.direction = FlowDirection::ForwardFlow;
    }
    return out;
}

enum class Stability { Stable, Inverted };

inline std::string to_string(Stability s) { return s == Stability::Stable ? "Stable" : "Inverted"; }

struct TransitionRecord {
    FlowDirection flow_at_zero_T = FlowDirection::Indeterminate;
    FlowDirection flow_at_positive_T = FlowDirection::Indeterminate;
    Stability stability = Stability::Stable;
};

/// Flow directions at T = 0 and T > 0 from the generic rules. Integer alpha0 depends
/// on the log power and must go through classify_long_time_flow.
inline TransitionRecord transition_table(double alpha0) {
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0))
        throw InvalidParameter("transition_table: alpha0 must be positive");
    if (special::is_integer(alpha0))
        throw InvalidParameter("transition_table: integer alpha0 needs the full model; use classify_long_time_flow");
    SpectralParams p;
    p.alpha0 = alpha0;
    const SpectralModel m(p);
    TransitionRecord r;
    r.flow_at_zero_T = classify_long_time_flow(m, BathSpec(0.0)).direction;
    r.flow_at_positive_T = classify_long_time_flow(m, BathSpec(1.0)).direction;
    r.stability = r.flow_at_zero_T == r.flow_at_positive_T ? Stability::Stable : Stability::Inverted;
    return r;
}

struct MarkovianCheck {
    bool markovian = true;
    std::optional<double> first_violation;          // smallest violating frequency found
    std::optional<std::pair<double, double>> first_interval; // its violating interval
};

/// Log grid for the Markovianity scan, wide enough to cover the cutoff.
inline std::vector<double> default_nu_grid(const SpectralModel& model, int per_decade = 200) {
    const double lo = 1e-8;
    const double hi = std::max(1e3, 100.0 * (model.alpha0() + 1.0) / model.cutoff());
    std::vector<double> g;
    const int n = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
    for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    return g;
}

/// Checks that Omega_T(nu)/nu is non-increasing, the sufficient condition for
/// gamma >= 0 at all times. Violation boundaries are refined by bisection.
inline MarkovianCheck markovian_sufficient_check(const SpectralModel& model, const BathSpec& bath,
                                                 const std::vector<double>& nu_grid) {
    // D = Omega' - Omega (1/nu + 2 / (theta sinh(2 nu/theta))) has the sign of (Omega_T/nu)'.
    auto excess = [&](double nu) {
        const double om = model.omega(nu);
        double w = 1.0 / nu;
        if (bath.thermal()) {
            const double x = 2.0 * nu / bath.theta;
            w += (x > 700.0) ? 0.0 : 2.0 / (bath.theta * std::sinh(x));
        }
        const double d = model.omega_derivative(nu);
        const double scale = std::abs(d) + std::abs(om) * w;
        if (!std::isfinite(scale) || scale == 0.0) return 0.0;
        const double v = d - om * w;
        return v > 1e-12 * scale ? v : 0.0;
    };
    auto bisect = [&](double a, double b, bool a_bad) {
        for (int i = 0; i < 200 && b - a > 1e-12 * b; ++i) {
            const double m = std::sqrt(a * b);
            if ((excess(m) > 0.0) == a_bad) a = m; else b = m;
        }
        return 0.5 * (a + b);
    };
    MarkovianCheck out;
    std::optional<double> start;
    for (std::size_t i = 0; i < nu_grid.size(); ++i) {
        const double nu = nu_grid[i];
        if (!(nu > 0.0)) continue;
        const bool bad = excess(nu) > 0.0;
        if (bad && !start) {
            start = (i == 0) ? nu : bisect(nu_grid[i - 1], nu, false);
            out.markovian = false;
            out.first_violation = *start;
        } else if (!bad && start) {
            out.first_interval = std::make_pair(*start, bisect(nu_grid[i - 1], nu, true));
            return out;
        }
    }
    if (start) out.first_interval = std::make_pair(*start, nu_grid.back());
    return out;
}

inline MarkovianCheck markovian_sufficient_check(const SpectralModel& model, const BathSpec& bath) {
    return markovian_sufficient_check(model, bath, default_nu_grid(model));
}

struct MeasureResult {
    double value = 0.0;
    std::vector<std::pair<double, double>> negative_intervals;
    double error_estimate = 0.0;
    double truncation_tau = 1e4;
    double tail = 0.0; // tail beyond truncation_tau, included in value
};

namespace detail {

inline std::vector<double> log_scan(double lo, double hi, int per_decade) {
    const int n = std::max(2, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)));
    std::vector<double> g;
    for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    return g;
}

// Sign changes of gamma on a scan grid: brackets (lo, hi) with the sign at lo.
struct Bracket {
    double lo, hi;
    bool negative_before;
};

inline std::vector<Bracket> sign_brackets(const Dynamics& dyn, double lo, double hi, int per_decade) {
    std::vector<Bracket> out;
    const auto grid = log_scan(lo, hi, per_decade);
    bool prev_neg = dyn.rate(grid.front()).value < 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool neg = dyn.rate(grid[i]).value < 0.0;
        if (neg != prev_neg) out.push_back({grid[i - 1], grid[i], prev_neg});
        prev_neg = neg;
    }
    return out;
}

} // namespace detail

/// N = int_{gamma<0} |gamma| e^{-Xi} dtau on (0, truncation_tau], plus the tail
/// e^{-Xi(inf)} - e^{-Xi(truncation)} when the long-time flow is a back-flow.
inline MeasureResult non_markovianity_measure(const SpectralModel& model, const BathSpec& bath,
                                              double truncation_tau = 1e4,
                                              const quad::QuadratureConfig& cfg = {}) {
    if (!(truncation_tau > 0.0) || !std::isfinite(truncation_tau))
        throw InvalidParameter("non_markovianity_measure: truncation_tau must be positive");
    const Dynamics dyn(model, bath, cfg);
    MeasureResult out;
    out.truncation_tau = truncation_tau;
    const double lo = std::min(1e-3, truncation_tau / 10.0);

    auto brackets = detail::sign_brackets(dyn, lo, truncation_tau, 64);
    auto finer = detail::sign_brackets(dyn, lo, truncation_tau, 128);
    if (finer.size() != brackets.size()) {
        brackets = detail::sign_brackets(dyn, lo, truncation_tau, 256);
        if (brackets.size() != finer.size())
            throw AccuracyError("non_markovianity_measure: sign changes of gamma not resolved", 0.0,
                                std::numeric_limits<double>::infinity());
    }

    auto root = [&](detail::Bracket b) {
        double a = b.lo, c = b.hi;
        while (c - a > 1e-10 * c) {
            const double m = 0.5 * (a + c);
            if ((dyn.rate(m).value < 0.0) == b.negative_before) a = m; else c = m;
        }
        return 0.5 * (a + c);
    };

    // Assemble maximal negative intervals.
    bool open = dyn.rate(lo).value < 0.0;
    double open_from = 0.0;
    for (const auto& b : brackets) {
        const double r = root(b);
        if (!b.negative_before) {
            open = true;
            open_from = r;
        } else if (open) {
            out.negative_intervals.emplace_back(open_from, r);
            open = false;
        }
    }
    const bool open_at_end = open;
    if (open) out.negative_intervals.emplace_back(open_from, truncation_tau);

    for (const auto& [a, b] : out.negative_intervals) {
        auto integrand = [&](double u) {
            const double tau = std::exp(u);
            return std::abs(dyn.rate(tau).value) * std::exp(-dyn.factor(tau).value) * tau;
        };
        const double ua = std::log(std::max(a, lo * 1e-3));
        auto r = quad::gauss_kronrod(integrand, ua, std::log(b), cfg.rel_tol, cfg.abs_tol);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
    }

    if (open_at_end && classify_long_time_flow(model, bath).direction == FlowDirection::BackFlow) {
        const auto& m = dyn.asymptotic_moment();
        if (m.finite()) {
            out.tail = std::max(0.0, std::exp(-*m.value) - std::exp(-dyn.factor(truncation_tau).value));
            out.value += out.tail;
            out.error_estimate += out.tail;
        }
    }
    return out;
}

} // namespace dephase
