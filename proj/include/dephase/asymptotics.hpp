// asymptotics.hpp - short- and long-time laws for the dephasing factor and rate.
//
// Long-time laws come from the small-frequency behaviour f(nu) ~ c nu^{a-1} (-ln nu)^beta
// of the integrand f = Omega_T/nu (rate) or Omega_T/nu^2 (factor):
//
//   int_0^inf f(nu) e^{i nu tau} dnu
//       ~ c tau^{-a} sum_k C(beta,k) (-1)^k ln^{beta-k}(tau) T_k(a),
//   T_k(a) = (d/da)^k [Gamma(a) e^{i pi a/2}].
//
// The rate takes the imaginary part, the factor minus the real part (plus Xi(inf) when
// it is finite). Closed forms for the named coefficients are kept separately in
// `coefficients` and serve as a cross-check of the general engine.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/special.hpp"
#include "dephase/spectral_density.hpp"

namespace dephase {

enum class Quantity { Xi, Gamma };

inline std::string to_string(Quantity q) { return q == Quantity::Xi ? "Xi" : "Gamma"; }

enum class Regime {
    ShortTimeQuadratic,
    ShortTimeLinear,
    // dephasing factor, zero temperature
    XiSubOhmicGrowth,
    XiOhmicLogGrowth,
    XiPowerLogRelaxation,
    XiEvenPowerRelaxation,
    XiEvenPowerFallback,
    XiGeneralLogRelaxation,
    // dephasing factor, thermal
    XiThermalPowerGrowth,
    XiThermalLinearGrowth,
    XiThermalLogGrowth,
    XiThermalPowerRelaxation,
    XiThermalOddPowerRelaxation,
    XiThermalOddPowerFallback,
    XiThermalGeneralLogRelaxation,
    // dephasing rate, zero temperature
    GammaPowerLogDecay,
    GammaEvenPowerDecay,
    GammaEvenPowerFallback,
    GammaGeneralLogDecay,
    // dephasing rate, thermal
    GammaThermalPowerLog,
    GammaThermalOhmicLog,
    GammaThermalOddPowerDecay,
    GammaThermalOddPowerFallback,
    GammaThermalGeneralLog,
};

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::ShortTimeQuadratic: return "ShortTimeQuadratic";
        case Regime::ShortTimeLinear: return "ShortTimeLinear";
        case Regime::XiSubOhmicGrowth: return "XiSubOhmicGrowth";
        case Regime::XiOhmicLogGrowth: return "XiOhmicLogGrowth";
        case Regime::XiPowerLogRelaxation: return "XiPowerLogRelaxation";
        case Regime::XiEvenPowerRelaxation: return "XiEvenPowerRelaxation";
        case Regime::XiEvenPowerFallback: return "XiEvenPowerFallback";
        case Regime::XiGeneralLogRelaxation: return "XiGeneralLogRelaxation";
        case Regime::XiThermalPowerGrowth: return "XiThermalPowerGrowth";
        case Regime::XiThermalLinearGrowth: return "XiThermalLinearGrowth";
        case Regime::XiThermalLogGrowth: return "XiThermalLogGrowth";
        case Regime::XiThermalPowerRelaxation: return "XiThermalPowerRelaxation";
        case Regime::XiThermalOddPowerRelaxation: return "XiThermalOddPowerRelaxation";
        case Regime::XiThermalOddPowerFallback: return "XiThermalOddPowerFallback";
        case Regime::XiThermalGeneralLogRelaxation: return "XiThermalGeneralLogRelaxation";
        case Regime::GammaPowerLogDecay: return "GammaPowerLogDecay";
        case Regime::GammaEvenPowerDecay: return "GammaEvenPowerDecay";
        case Regime::GammaEvenPowerFallback: return "GammaEvenPowerFallback";
        case Regime::GammaGeneralLogDecay: return "GammaGeneralLogDecay";
        case Regime::GammaThermalPowerLog: return "GammaThermalPowerLog";
        case Regime::GammaThermalOhmicLog: return "GammaThermalOhmicLog";
        case Regime::GammaThermalOddPowerDecay: return "GammaThermalOddPowerDecay";
        case Regime::GammaThermalOddPowerFallback: return "GammaThermalOddPowerFallback";
        case Regime::GammaThermalGeneralLog: return "GammaThermalGeneralLog";
    }
    return "?";
}

/// coeff * tau^tau_power * ln^log_power(tau)
struct AsymptoticTerm {
    double coeff = 0.0;
    double tau_power = 0.0;
    double log_power = 0.0;

    double operator()(double tau) const {
        const double l = std::log(tau);
        return coeff * std::pow(tau, tau_power) * (log_power == 0.0 ? 1.0 : std::pow(l, log_power));
    }
};

struct AsymptoticExpansion {
    std::optional<double> constant;
    std::vector<AsymptoticTerm> terms; // leading first
    Regime regime = Regime::ShortTimeQuadratic;
    Quantity quantity = Quantity::Xi;

    const AsymptoticTerm& leading() const {
        if (terms.empty()) throw UnsupportedRegime("asymptotic expansion has no terms");
        return terms.front();
    }

    /// Sum of the tau-dependent terms, i.e. the law without its constant.
    double variable_part(double tau) const {
        double s = 0.0;
        for (const auto& t : terms) s += t(tau);
        return s;
    }

    double operator()(double tau) const { return constant.value_or(0.0) + variable_part(tau); }
};

/// Closed-form coefficients of the named long-time laws, per unit amplitude and in
/// units of Delta. `theta` is the dimensionless temperature 2 k_B T / (hbar Delta).
namespace coefficients {

using special::cos_half_pi;
using special::sin_half_pi;

inline double gamma_prime(double x) { return special::gamma(x) * special::digamma(x); }

inline double g1(double a) { return sin_half_pi(a) * special::gamma(a); }
inline double g1_prime(int m2, double n0) {
    return std::numbers::pi * ((m2 + 1) % 2 == 0 ? 1.0 : -1.0) * n0 * special::detail::factorial(2 * m2 - 1) / 2.0;
}
inline double g1_bar(double a, double beta) {
    return beta * (std::numbers::pi / 2.0 * cos_half_pi(a) * special::gamma(a) + sin_half_pi(a) * gamma_prime(a));
}
inline double gT(double a, double theta) {
    return theta * cos_half_pi(a) * special::gamma(a) / (1.0 - a);
}
inline double gT_prime(int m3, double n0, double theta) {
    return std::numbers::pi * ((1 + m3) % 2 == 0 ? 1.0 : -1.0) * theta / 2.0 * n0 *
           special::detail::factorial(2 * m3 - 1);
}
inline double gT_bar(double a, double beta, double theta) {
    return theta / 2.0 * beta *
           (2.0 * cos_half_pi(a) * gamma_prime(a - 1.0) - std::numbers::pi * sin_half_pi(a) * special::gamma(a - 1.0));
}

inline double r1(double a) { return sin_half_pi(a) * special::gamma(a) / (1.0 - a); }
inline double r1_prime(int m0, double n0) {
    return std::numbers::pi * (m0 % 2 == 0 ? 1.0 : -1.0) * n0 * special::detail::factorial(2 * m0 - 2) / 2.0;
}
/// Subleading coefficient of the second-class relaxation. The sign and the cos factor
/// follow from differentiating Gamma(a-1) cos(pi(a-1)/2) in a.
inline double r1_bar(double a, double beta) {
    return beta * (sin_half_pi(a) * gamma_prime(a - 1.0) + std::numbers::pi / 2.0 * cos_half_pi(a) * special::gamma(a - 1.0));
}
inline double rT(double a, double theta) { return theta * cos_half_pi(a) * special::gamma(a - 2.0); }
inline double rT_prime(double theta) { return std::numbers::pi * theta / 2.0; }
inline double rT_dprime(double n0, double theta) { return theta / (n0 + 1.0); }
inline double rT_tprime(int m1, double n0, double theta) {
    return std::numbers::pi * (m1 % 2 == 0 ? 1.0 : -1.0) * theta / 2.0 * n0 * special::detail::factorial(2 * m1 - 2);
}
inline double rT_bar(double a, double beta, double theta) {
    return theta / 2.0 * beta *
           (std::numbers::pi * sin_half_pi(a) * special::gamma(a - 2.0) - 2.0 * cos_half_pi(a) * gamma_prime(a - 2.0));
}

} // namespace coefficients

namespace detail {

// Terms of c tau^{-a} sum_k C(beta,k)(-1)^k ln^{beta-k} tau * part(T_k(a)), with
// part = Im (imag_part) or -Re. k runs over 0..k_max; exact zeros are dropped.
inline std::vector<AsymptoticTerm> log_series_terms(double c, double a, double beta, int k_max,
                                                    bool imag_part, std::size_t keep) {
    using C = std::complex<double>;
    const auto gd = special::gamma_derivatives(a, k_max);
    // e^{i pi a/2} with exact values at integers so that structural zeros stay zero
    const C phase(special::cos_half_pi(a), special::sin_half_pi(a));
    std::vector<AsymptoticTerm> out;
    for (int k = 0; k <= k_max && out.size() < keep; ++k) {
        // T_k = sum_j C(k,j) Gamma^{(j)}(a) (i pi/2)^{k-j} e^{i pi a/2}
        double re = 0.0, im = 0.0;
        for (int j = 0; j <= k; ++j) {
            const int n = k - j;
            const double mag = special::binomial(k, j) * std::pow(std::numbers::pi / 2.0, n) *
                               gd[static_cast<std::size_t>(j)];
            // i^n * (cos + i sin), exact in the structural zeros
            double pr = phase.real(), pi = phase.imag();
            for (int r = 0; r < n % 4; ++r) {
                const double t = pr;
                pr = -pi;
                pi = t;
            }
            re += mag * pr;
            im += mag * pi;
        }
        const double part = imag_part ? im : -re;
        const double coeff = c * special::binomial(beta, k) * ((k % 2 == 0) ? 1.0 : -1.0) * part;
        if (coeff == 0.0) continue;
        out.push_back({coeff, -a, beta - k});
    }
    return out;
}

} // namespace detail

/// Short-time law: Xi ~ (l/2) tau^2 and gamma/Delta ~ l tau with l = int Omega_(T).
inline AsymptoticExpansion short_time_law(const SpectralModel& model, const BathSpec& bath,
                                          Quantity q, const quad::QuadratureConfig& cfg = {}) {
    const auto m = moment(model, bath, bath.thermal() ? MomentKind::LT : MomentKind::L0, cfg);
    if (!m.finite()) throw DivergentIntegrand("short_time_law: zeroth moment diverges");
    AsymptoticExpansion e;
    e.quantity = q;
    if (q == Quantity::Xi) {
        e.regime = Regime::ShortTimeQuadratic;
        e.terms.push_back({*m.value / 2.0, 2.0, 0.0});
    } else {
        e.regime = Regime::ShortTimeLinear;
        e.terms.push_back({*m.value, 1.0, 0.0});
    }
    return e;
}

/// Long-time law for Xi or gamma/Delta.
///
/// For natural log powers every term of the finite log polynomial is emitted, since
/// the subleading logs of ln^p are only a factor ln(tau) smaller. For real powers the
/// leading and the first subleading non-vanishing terms are emitted. When the whole
/// polynomial vanishes (integer exponent with p = 0) the next term of the cutoff
/// series, -lambda nu, supplies the law.
inline AsymptoticExpansion long_time_law(const SpectralModel& model, const BathSpec& bath,
                                         Quantity q, const quad::QuadratureConfig& cfg = {}) {
    const double alpha = model.alpha0();
    const double p = model.log_power();
    const bool thermal = bath.thermal();
    const bool first = model.first_class();
    const double A = model.amplitude();
    const double c = thermal ? A * bath.theta : A; // coth(nu/theta) ~ theta/nu
    const auto ip = model.integer_log_power();
    const bool finite_poly = ip.has_value();
    const bool gamma_q = q == Quantity::Gamma;

    AsymptoticExpansion e;
    e.quantity = q;

    const double a = alpha - (gamma_q ? 0.0 : 1.0) - (thermal ? 1.0 : 0.0);
    const bool int_a = special::is_integer(a);

    // Exponents where Gamma(a) has a pole are handled by their own closed forms.
    if (!gamma_q && !thermal && int_a && std::llround(a) == 0) {
        if (!first) throw UnsupportedRegime("long_time_law: second class factor needs alpha0 > 1");
        e.regime = Regime::XiOhmicLogGrowth;
        e.terms.push_back({A / (p + 1.0), 0.0, p + 1.0});
        return e;
    }
    if (!gamma_q && thermal && int_a && std::llround(a) == -1) {
        if (!first) throw UnsupportedRegime("long_time_law: second class thermal factor needs alpha0 > 2");
        e.regime = Regime::XiThermalLinearGrowth;
        e.terms.push_back({A * coefficients::rT_prime(bath.theta), 1.0, p});
        return e;
    }
    if (!gamma_q && thermal && int_a && std::llround(a) == 0) {
        if (!first) throw UnsupportedRegime("long_time_law: second class thermal factor needs alpha0 > 2");
        e.regime = Regime::XiThermalLogGrowth;
        e.terms.push_back({A * coefficients::rT_dprime(p, bath.theta), 0.0, p + 1.0});
        return e;
    }
    if (gamma_q && thermal && int_a && std::llround(a) == 0) {
        e.regime = Regime::GammaThermalOhmicLog;
        e.terms.push_back({A * std::numbers::pi * bath.theta / 2.0, 0.0, p});
        return e;
    }

    if (!first && !gamma_q && ((!thermal && alpha <= 1.0) || (thermal && alpha <= 2.0)))
        throw UnsupportedRegime("long_time_law: second class factor requires a finite second negative moment");

    const int k_max = finite_poly ? *ip : 3;
    const std::size_t keep = finite_poly ? static_cast<std::size_t>(*ip + 1) : 2;
    e.terms = detail::log_series_terms(c, a, p, k_max, gamma_q, keep);

    // Degenerate exponents in the first class.
    const bool vanishing_leading = int_a && (gamma_q ? special::sin_half_pi(a) == 0.0
                                                     : special::cos_half_pi(a) == 0.0);
    bool fallback = false;
    if (e.terms.empty()) {
        // -lambda nu correction of the cutoff: c nu^{a} (-lambda) (-ln nu)^p
        e.terms = detail::log_series_terms(-model.cutoff() * c, a + 1.0, p, k_max, gamma_q, keep);
        if (e.terms.empty())
            throw UnsupportedRegime("long_time_law: leading and first fallback coefficients vanish");
        fallback = true;
    }

    if (!gamma_q) {
        const auto m = moment(model, bath, MomentKind::SecondNegMoment, cfg);
        if (m.finite()) e.constant = *m.value;
    }

    if (!first) {
        e.regime = gamma_q ? (thermal ? Regime::GammaThermalGeneralLog : Regime::GammaGeneralLogDecay)
                           : (thermal ? Regime::XiThermalGeneralLogRelaxation : Regime::XiGeneralLogRelaxation);
        return e;
    }
    if (gamma_q) {
        if (!thermal) {
            e.regime = fallback ? Regime::GammaEvenPowerFallback
                       : vanishing_leading ? Regime::GammaEvenPowerDecay : Regime::GammaPowerLogDecay;
        } else {
            e.regime = fallback ? Regime::GammaThermalOddPowerFallback
                       : vanishing_leading ? Regime::GammaThermalOddPowerDecay : Regime::GammaThermalPowerLog;
        }
    } else if (!thermal) {
        if (alpha < 1.0) e.regime = Regime::XiSubOhmicGrowth;
        else e.regime = fallback ? Regime::XiEvenPowerFallback
                        : vanishing_leading ? Regime::XiEvenPowerRelaxation : Regime::XiPowerLogRelaxation;
    } else {
        if (alpha < 2.0) e.regime = Regime::XiThermalPowerGrowth;
        else e.regime = fallback ? Regime::XiThermalOddPowerFallback
                        : vanishing_leading ? Regime::XiThermalOddPowerRelaxation
                                            : Regime::XiThermalPowerRelaxation;
    }
    return e;
}

/// Mellin-side quantities of a CanonicalEvenLog model at one point s.
struct MellinValues {
    std::complex<double> omega_hat; // Omega^(s) = int nu^{s-1} Omega dnu
    std::complex<double> F0;        // transform of the factor kernel
    std::complex<double> G0;        // transform of the rate
};

namespace detail {

// A (d/d alpha)^p [Gamma(z + alpha) lambda^{-(z + alpha)}]
inline std::complex<double> omega_hat(const SpectralModel& model, std::complex<double> z) {
    using C = std::complex<double>;
    const C w = z + model.alpha0();
    const int p = model.integer_log_power().value();
    const C h = special::log_gamma(w) - w * std::log(model.cutoff());
    std::vector<C> d;
    if (p >= 1) d.push_back(special::polygamma(0, w) - std::log(model.cutoff()));
    for (int k = 2; k <= p; ++k) d.push_back(special::polygamma(k - 1, w));
    const auto y = special::bell_polynomials(d);
    return model.amplitude() * std::exp(h) * y[static_cast<std::size_t>(p)];
}

inline double distance_to_poles(const SpectralModel& model, std::complex<double> s) {
    double best = std::numeric_limits<double>::infinity();
    auto near_grid = [&](double start) {
        // distance from s to {start, start - 1, start - 2, ...}
        const double re = s.real();
        const double k = std::max(0.0, std::round(start - re));
        for (double kk : {k - 1.0, k, k + 1.0}) {
            if (kk < 0.0) continue;
            best = std::min(best, std::abs(s - std::complex<double>(start - kk, 0.0)));
        }
    };
    near_grid(0.0); // Gamma(s)
    // Omega^(-s) and Omega^(-1-s) have poles at s = alpha + k and s = alpha - 1 + k
    auto up_grid = [&](double start) {
        const double k = std::max(0.0, std::round(s.real() - start));
        for (double kk : {k - 1.0, k, k + 1.0}) {
            if (kk < 0.0) continue;
            best = std::min(best, std::abs(s - std::complex<double>(start + kk, 0.0)));
        }
    };
    up_grid(model.alpha0());
    up_grid(model.alpha0() - 1.0);
    return best;
}

} // namespace detail

inline MellinValues mellin_coefficient_oracle(const SpectralModel& model, std::complex<double> s) {
    if (!model.first_class())
        throw UnsupportedRegime("mellin_coefficient_oracle: requires the CanonicalEvenLog family");
    if (detail::distance_to_poles(model, s) < 1e-6)
        throw DomainError("mellin_coefficient_oracle: s is within 1e-6 of a pole");
    using C = std::complex<double>;
    const C half = std::numbers::pi * s / 2.0;
    const C gs = special::gamma(s);
    MellinValues v;
    v.omega_hat = detail::omega_hat(model, s);
    v.F0 = -std::cos(half) * gs * detail::omega_hat(model, -1.0 - s);
    v.G0 = std::sin(half) * gs * detail::omega_hat(model, -s);
    return v;
}

/// Laurent coefficients a_{-1}..a_{-order} of a function at s0, from the trapezoid rule
/// on the circle |s - s0| = radius.
template <class F>
std::vector<std::complex<double>> laurent_coefficients(F&& f, std::complex<double> s0, int order,
                                                       double radius = 0.25, int nodes = 64) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(order), 0.0);
    for (int j = 0; j < nodes; ++j) {
        const std::complex<double> u = std::polar(radius, 2.0 * std::numbers::pi * j / nodes);
        const auto val = f(s0 + u);
        std::complex<double> up = u;
        for (int m = 1; m <= order; ++m) {
            a[static_cast<std::size_t>(m - 1)] += val * up;
            up *= u;
        }
    }
    for (auto& x : a) x /= static_cast<double>(nodes);
    return a;
}

/// Long-time coefficients of gamma/Delta read off the pole of G0 at s = alpha:
/// entry j multiplies tau^{-alpha} ln^j tau.
inline std::vector<double> mellin_rate_coefficients(const SpectralModel& model, double radius = 0.25,
                                                    int nodes = 64) {
    const int p = model.integer_log_power().value_or(0);
    const int order = p + 1;
    auto G = [&](std::complex<double> s) { return mellin_coefficient_oracle(model, s).G0; };
    const auto a = laurent_coefficients(G, model.alpha0(), order, radius, nodes);
    std::vector<double> out;
    for (int m = 1; m <= order; ++m) {
        // -Res[tau^{-s} G0] expanded in ln tau
        const double sign = ((m - 1) % 2 == 0) ? 1.0 : -1.0;
        out.push_back(-(a[static_cast<std::size_t>(m - 1)] * sign).real() / special::detail::factorial(m - 1));
    }
    return out;
}

} // namespace dephase
