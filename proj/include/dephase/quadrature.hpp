// quadrature.hpp - semi-infinite integrals with smooth envelopes and sin/cos kernels.
//
// Three engines live here:
//   integrate_tail        : non-oscillatory integrals over (0, inf)
//   integrate_oscillatory : zero-partitioned panels summed with Wynn's epsilon algorithm
//   integrate_ray         : integrals of analytic functions along nu = r e^{i phi}
// The first two only need real samples of the integrand; the third is used when the
// integrand continues analytically into the right half plane.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "dephase/error.hpp"

namespace dephase::quad {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_zero_intervals = 100000;
    int acceleration_depth = 30;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw InvalidParameter("quadrature tolerances must be positive");
        if (max_zero_intervals < 1 || acceleration_depth < 1)
            throw InvalidParameter("quadrature depths must be at least 1");
    }
};

template <class R = double>
struct IntegralValue {
    R value{};
    double error_estimate = 0.0;
    int intervals_used = 0;
    bool accelerated = false;
    bool converged = true;
};

enum class Kernel { Sin, Cos, OneMinusCos };

namespace detail {

template <class R>
double magnitude(const R& v) { return std::abs(v); }

inline constexpr int de_max_level = 9;

template <class R>
struct DEResult {
    R value{};
    double error = 0.0;
    bool converged = false;
};

// Shared driver for the double-exponential rules. `node(t)` returns the pair
// (x, dx/dt); a node with x outside the representable range returns weight 0.
template <class F, class Node>
auto de_driver(F&& f, Node&& node, double t_max, double rel_tol, double abs_tol)
    -> DEResult<std::invoke_result_t<F, double>> {
    using R = std::invoke_result_t<F, double>;
    DEResult<R> out;
    R sum = R(0.0);
    double mass = 0.0;
    R previous = R(0.0);
    double previous_err = std::numeric_limits<double>::infinity();

    auto sample = [&](double t) -> R {
        const auto [x, w] = node(t);
        if (w == 0.0 || !std::isfinite(w)) return R(0.0);
        const R v = f(x);
        const R term = v * w;
        if (!std::isfinite(magnitude(term))) return R(0.0);
        return term;
    };

    // Walks outward from t0 in steps of dt, stopping once terms become negligible.
    auto sweep = [&](double t0, double dt) {
        R local = R(0.0);
        int small = 0;
        for (double t = t0; std::abs(t) <= t_max; t += dt) {
            const R term = sample(t);
            local += term;
            mass += magnitude(term);
            if (magnitude(term) <= 1e-19 * mass && std::abs(t) > 1.0) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
        }
        return local;
    };

    double h = 1.0;
    sum = sample(0.0) + sweep(1.0, 1.0) + sweep(-1.0, -1.0);
    previous = sum * h;
    for (int level = 1; level <= de_max_level; ++level) {
        h *= 0.5;
        sum += sweep(h, 2.0 * h) + sweep(-h, -2.0 * h);
        const R current = sum * h;
        const double err = magnitude(current - previous);
        out.value = current;
        out.error = err;
        // Values near the underflow threshold cannot carry a relative accuracy.
        const double floor = std::max(abs_tol, 1e3 * std::numeric_limits<double>::min());
        if (level >= 3 && (err <= rel_tol * magnitude(current) || err <= floor)) {
            out.converged = true;
            // The DE error decays roughly quadratically per level; previous_err^2
            // relative scaling gives a sharper, still conservative bound.
            if (std::isfinite(previous_err) && magnitude(current) > 0.0) {
                const double rel = previous_err / magnitude(current);
                out.error = std::max(std::min(err, rel * rel * magnitude(current) * 10.0),
                                     4.0 * std::numeric_limits<double>::epsilon() * mass * h);
            }
            return out;
        }
        previous_err = err;
        previous = current;
    }
    return out;
}

} // namespace detail

/// Tanh-sinh rule on [a, b]; tolerant of integrable endpoint singularities.
template <class F>
auto tanh_sinh(F&& f, double a, double b, double rel_tol, double abs_tol) {
    const double len = b - a;
    auto node = [a, b, len](double t) -> std::pair<double, double> {
        const double u = std::numbers::pi / 2.0 * std::sinh(t);
        if (std::abs(u) > 350.0) return {a, 0.0};
        const double c = std::cosh(u);
        const double w = len * (std::numbers::pi / 2.0) * std::cosh(t) / (2.0 * c * c);
        double x;
        if (t <= 0.0) {
            x = a + len / (1.0 + std::exp(-2.0 * u));
            if (!(x > a)) return {a, 0.0};
        } else {
            x = b - len / (1.0 + std::exp(2.0 * u));
            if (!(x < b)) return {b, 0.0};
        }
        return {x, w};
    };
    return detail::de_driver(std::forward<F>(f), node, 6.5, rel_tol, abs_tol);
}

/// Exp-sinh rule on [0, inf): x = exp(pi/2 sinh t).
template <class F>
auto exp_sinh(F&& f, double rel_tol, double abs_tol) {
    auto node = [](double t) -> std::pair<double, double> {
        const double u = std::numbers::pi / 2.0 * std::sinh(t);
        if (std::abs(u) > 700.0) return {0.0, 0.0};
        const double x = std::exp(u);
        return {x, x * (std::numbers::pi / 2.0) * std::cosh(t)};
    };
    return detail::de_driver(std::forward<F>(f), node, 6.8, rel_tol, abs_tol);
}

namespace detail {

inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kronrod_w[7];
    double g = fc * gauss_w[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[i];
        const double s = f(c - dx) + f(c + dx);
        k += kronrod_w[i] * s;
        if (i % 2 == 1) g += gauss_w[i / 2] * s;
    }
    return {k * h, std::abs((k - g) * h)};
}

} // namespace detail

/// Adaptive Gauss-Kronrod (7/15) on a finite interval.
template <class F>
IntegralValue<double> gauss_kronrod(F&& f, double a, double b, double rel_tol, double abs_tol,
                                    int max_intervals = 2000) {
    struct Segment { double a, b, value, error; };
    std::vector<Segment> segs;
    auto [v0, e0] = detail::gk15(f, a, b);
    segs.push_back({a, b, v0, e0});
    double total = v0, total_err = e0;
    while (total_err > std::max(rel_tol * std::abs(total), abs_tol) &&
           static_cast<int>(segs.size()) < max_intervals) {
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const Segment& l, const Segment& r) { return l.error < r.error; });
        const Segment s = *worst;
        segs.erase(worst);
        const double m = 0.5 * (s.a + s.b);
        auto [vl, el] = detail::gk15(f, s.a, m);
        auto [vr, er] = detail::gk15(f, m, s.b);
        segs.push_back({s.a, m, vl, el});
        segs.push_back({m, s.b, vr, er});
        total = 0.0;
        total_err = 0.0;
        for (const auto& x : segs) { total += x.value; total_err += x.error; }
    }
    IntegralValue<double> out{total, total_err, static_cast<int>(segs.size()), false};
    if (total_err > std::max(rel_tol * std::abs(total), abs_tol))
        throw AccuracyError("gauss_kronrod: interval budget exhausted", total, total_err);
    return out;
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
/// Returns {estimate, error} where error compares the two newest even-column entries.
inline std::pair<double, double> wynn_epsilon(const std::vector<double>& partial_sums) {
    const std::size_t n = partial_sums.size();
    if (n < 3) return {partial_sums.back(), std::numeric_limits<double>::infinity()};
    std::vector<double> prev(n + 1, 0.0);          // column k-1
    std::vector<double> cur(partial_sums.begin(), partial_sums.end()); // column k = 0
    std::vector<double> estimates;
    estimates.push_back(cur.back());
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            const double inv = (std::abs(diff) < 1e-300) ? 1e300 : 1.0 / diff;
            next[i] = prev[i + 1] + inv;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0 && !cur.empty()) {
            if (!std::isfinite(cur.back())) break;
            estimates.push_back(cur.back());
        }
        if (cur.size() <= 1) break;
    }
    const double best = estimates.back();
    const double err = (estimates.size() >= 2)
                           ? std::abs(estimates.back() - estimates[estimates.size() - 2])
                           : std::numeric_limits<double>::infinity();
    return {best, err};
}

/// Integral of f over (0, inf) for f with an exponentially decaying tail.
/// Splits at nu* (where |f| nu has dropped far below its peak): adaptive tanh-sinh
/// panels on (0, nu*] and an exp-sinh map of the tail.
template <class F>
IntegralValue<double> integrate_tail(F&& f, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    double peak = 0.0;
    int peak_k = -40;
    for (int k = -40; k <= 200; ++k) {
        const double nu = std::ldexp(1.0, k);
        const double m = std::abs(f(nu)) * nu;
        if (!std::isfinite(m)) throw InvalidParameter("integrate_tail: non-finite integrand");
        if (m > peak) { peak = m; peak_k = k; }
    }
    if (peak == 0.0) return {0.0, 0.0, 1, false};
    double nu_star = std::ldexp(1.0, peak_k + 1);
    for (int k = peak_k + 1; k <= 200; ++k) {
        nu_star = std::ldexp(1.0, k);
        const double m = std::abs(f(nu_star)) * nu_star;
        if (m <= 1e-3 * cfg.rel_tol * peak && std::abs(f(nu_star)) < cfg.abs_tol) break;
    }

    IntegralValue<double> out;
    const double target_abs = cfg.abs_tol;
    std::function<void(double, double, int)> panel = [&](double a, double b, int depth) {
        auto r = tanh_sinh(f, a, b, cfg.rel_tol * 0.1, target_abs * 0.1);
        ++out.intervals_used;
        if (r.converged || depth >= 24 || out.intervals_used >= cfg.max_zero_intervals) {
            out.value += r.value;
            out.error_estimate += r.error;
            return;
        }
        const double m = (a == 0.0) ? b / 8.0 : 0.5 * (a + b);
        panel(a, m, depth + 1);
        panel(m, b, depth + 1);
    };
    panel(0.0, nu_star, 0);
    auto tail = exp_sinh([&](double x) { return f(nu_star * (1.0 + x)) * nu_star; },
                         cfg.rel_tol, target_abs);
    out.value += tail.value;
    out.error_estimate += tail.error;
    if (out.error_estimate > std::max(cfg.rel_tol * std::abs(out.value), cfg.abs_tol))
        throw AccuracyError("integrate_tail: tolerance not reached", out.value, out.error_estimate);
    return out;
}

/// Integral over (0, inf) of f(nu) * kernel(nu tau).
///
/// For tau <= 1 the product is handed to integrate_tail. Otherwise (0, inf) is cut at
/// the kernel zeros, every panel is integrated adaptively and the alternating series
/// of panel integrals is summed with Wynn's epsilon algorithm.
template <class F>
IntegralValue<double> integrate_oscillatory(F&& f, Kernel kernel, double tau,
                                            const QuadratureConfig& cfg = {},
                                            bool force_partition = false) {
    cfg.validate();
    if (!(tau > 0.0)) throw DomainError("integrate_oscillatory: tau must be positive");

    auto kern = [kernel](double x) {
        switch (kernel) {
            case Kernel::Sin: return std::sin(x);
            case Kernel::Cos: return std::cos(x);
            default: {
                const double s = std::sin(0.5 * x);
                return 2.0 * s * s;
            }
        }
    };

    if (tau <= 1.0 && !force_partition) {
        return integrate_tail([&](double nu) { return f(nu) * kern(nu * tau); }, cfg);
    }

    const double pi = std::numbers::pi;
    const double period = pi / tau;
    IntegralValue<double> out;
    double head = 0.0, head_err = 0.0;
    double first_zero;
    double sign = 1.0;
    std::function<double(double)> osc;

    if (kernel == Kernel::Sin) {
        first_zero = 0.0;
        osc = [&](double nu) { return f(nu) * std::sin(nu * tau); };
    } else {
        first_zero = 0.5 * period;
        auto r = tanh_sinh([&](double nu) { return f(nu) * kern(nu * tau); }, 0.0, first_zero,
                           cfg.rel_tol * 0.01, cfg.abs_tol * 0.01);
        head = r.value;
        head_err = r.error;
        ++out.intervals_used;
        if (kernel == Kernel::Cos) {
            osc = [&](double nu) { return f(nu) * std::cos(nu * tau); };
        } else {
            // int_{nu_s}^inf f (1 - cos) = int_{nu_s}^inf f - int_{nu_s}^inf f cos
            auto t = exp_sinh([&](double x) { return f(first_zero * (1.0 + x)) * first_zero; },
                              cfg.rel_tol * 0.01, cfg.abs_tol * 0.01);
            head += t.value;
            head_err += t.error;
            sign = -1.0;
            osc = [&](double nu) { return f(nu) * std::cos(nu * tau); };
        }
    }

    std::vector<double> partial;
    double running = 0.0, panel_err = 0.0;
    double last_est = std::numeric_limits<double>::quiet_NaN();
    int agree = 0;
    const int window = 2 * cfg.acceleration_depth + 1;
    for (int j = 0; j < cfg.max_zero_intervals; ++j) {
        const double a = first_zero + j * period;
        const double b = a + period;
        double v, e;
        if (j == 0 && kernel == Kernel::Sin) {
            auto r = tanh_sinh(osc, a, b, cfg.rel_tol * 0.01, cfg.abs_tol * 0.01);
            v = r.value;
            e = r.error;
        } else {
            auto r = gauss_kronrod(osc, a, b, cfg.rel_tol * 0.01, cfg.abs_tol * 0.01);
            v = r.value;
            e = r.error_estimate;
        }
        ++out.intervals_used;
        running += v;
        panel_err += e;
        partial.push_back(running);

        // Direct convergence: the envelope has died out.
        if (j >= 4 && std::abs(v) <= 1e-3 * cfg.rel_tol * std::abs(running) &&
            std::abs(v) <= cfg.abs_tol * 1e-3) {
            out.value = head + sign * running;
            out.error_estimate = head_err + panel_err + std::abs(v);
            return out;
        }
        if (j < 4) continue;
        const std::size_t start = partial.size() > static_cast<std::size_t>(window)
                                      ? partial.size() - window : 0;
        std::vector<double> recent(partial.begin() + static_cast<std::ptrdiff_t>(start), partial.end());
        auto [est, err] = wynn_epsilon(recent);
        const double tol = std::max(cfg.rel_tol * std::abs(est), cfg.abs_tol) * 0.1;
        if (std::isfinite(last_est) && std::abs(est - last_est) <= tol && err <= tol * 10.0) {
            if (++agree >= 2) {
                out.value = head + sign * est;
                out.error_estimate = head_err + panel_err + std::max(std::abs(est - last_est), err);
                out.accelerated = true;
                return out;
            }
        } else {
            agree = 0;
        }
        last_est = est;
    }
    throw AccuracyError("integrate_oscillatory: zero-interval budget exhausted",
                        head + sign * (std::isfinite(last_est) ? last_est : running),
                        std::abs(partial.back() - (partial.size() > 1 ? partial[partial.size() - 2] : 0.0)));
}

/// Integral of an analytic g along the ray nu = r e^{i phi}, r in [0, inf).
/// `rate` is the decay rate of |g| in r and sets the working scale u = rate * r.
template <class G>
IntegralValue<std::complex<double>> integrate_ray(G&& g, double phi, double rate,
                                                  const QuadratureConfig& cfg = {},
                                                  bool throw_on_failure = true) {
    cfg.validate();
    if (!(rate > 0.0)) throw DomainError("integrate_ray: rate must be positive");
    const std::complex<double> dir = std::polar(1.0, phi);
    const std::complex<double> jac = dir / rate;
    auto r = exp_sinh([&](double u) -> std::complex<double> { return g(jac * u); },
                      cfg.rel_tol * 0.1, 0.0);
    IntegralValue<std::complex<double>> out;
    out.value = r.value * jac;
    out.error_estimate = r.error / rate;
    out.intervals_used = 1;
    out.converged = r.converged;
    if (!r.converged && throw_on_failure)
        throw AccuracyError("integrate_ray: tolerance not reached", std::abs(out.value),
                            out.error_estimate);
    return out;
}

} // namespace dephase::quad
