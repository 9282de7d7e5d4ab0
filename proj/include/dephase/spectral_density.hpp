// spectral_density.hpp - power-log spectral densities with exponential cutoff.
//
// Omega(nu) = A nu^alpha exp(-lambda nu) L_p(nu), with nu = omega / Delta and
//   CanonicalEvenLog : L_p(nu) = ln^p(nu),         p an even natural number
//   GeneralLog       : L_p(nu) = ln^p(e + 1/nu),   p any real number
// Both families satisfy L_p(nu) ~ (-ln nu)^p as nu -> 0+.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/special.hpp"

namespace dephase {

enum class LogFamily { CanonicalEvenLog, GeneralLog };

inline std::string to_string(LogFamily f) {
    return f == LogFamily::CanonicalEvenLog ? "CanonicalEvenLog" : "GeneralLog";
}

inline LogFamily parse_log_family(const std::string& s) {
    if (s == "CanonicalEvenLog") return LogFamily::CanonicalEvenLog;
    if (s == "GeneralLog") return LogFamily::GeneralLog;
    throw InvalidParameter("unknown spectral family '" + s + "'");
}

/// Plain parameter record; this is what config files store.
struct SpectralParams {
    double alpha0 = 1.0;
    double log_power = 0.0;
    LogFamily family = LogFamily::CanonicalEvenLog;
    double cutoff = 1.0;
    double amplitude = 1.0;
    double scale = 1.0;

    bool operator==(const SpectralParams&) const = default;
};

class SpectralModel {
public:
    explicit SpectralModel(const SpectralParams& p) : p_(p) {
        auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
        if (!positive(p.alpha0)) throw InvalidParameter("alpha0 must be positive");
        if (!positive(p.cutoff)) throw InvalidParameter("cutoff must be positive");
        if (!positive(p.amplitude)) throw InvalidParameter("amplitude must be positive");
        if (!positive(p.scale)) throw InvalidParameter("scale must be positive");
        if (!std::isfinite(p.log_power)) throw InvalidParameter("log_power must be finite");
        if (p.family == LogFamily::CanonicalEvenLog) {
            if (!special::is_integer(p.log_power, 0.0) || p.log_power < 0.0 ||
                std::llround(p.log_power) % 2 != 0)
                throw InvalidParameter("CanonicalEvenLog requires an even natural log_power");
        }
    }

    const SpectralParams& params() const noexcept { return p_; }
    double alpha0() const noexcept { return p_.alpha0; }
    double log_power() const noexcept { return p_.log_power; }
    double cutoff() const noexcept { return p_.cutoff; }
    double amplitude() const noexcept { return p_.amplitude; }
    double scale() const noexcept { return p_.scale; }
    LogFamily family() const noexcept { return p_.family; }

    /// True when the first-class (natural log power) formulas apply.
    bool first_class() const noexcept { return p_.family == LogFamily::CanonicalEvenLog; }

    /// Power p as an integer when it is one.
    std::optional<int> integer_log_power() const {
        if (special::is_integer(p_.log_power, 0.0) && p_.log_power >= 0.0)
            return static_cast<int>(std::llround(p_.log_power));
        return std::nullopt;
    }

    /// L_p(nu) for real or complex nu in the right half plane.
    template <class T>
    T log_factor(T nu) const {
        if (p_.log_power == 0.0) return T(1.0);
        if (p_.family == LogFamily::CanonicalEvenLog) {
            const T l = std::log(nu);
            T r = 1.0;
            for (long long i = 0; i < std::llround(p_.log_power); ++i) r *= l;
            return r;
        }
        // ln(e + 1/nu) = -ln(nu) + ln(1 + e nu), written to stay finite as nu -> 0
        T l;
        if (std::abs(nu) < 0.25) {
            l = -std::log(nu) + std::log(T(1.0) + std::numbers::e * nu);
        } else {
            l = std::log(std::numbers::e + T(1.0) / nu);
        }
        return std::pow(l, p_.log_power);
    }

    /// d L_p / d nu on the real axis.
    double log_factor_derivative(double nu) const {
        const double p = p_.log_power;
        if (p == 0.0) return 0.0;
        if (p_.family == LogFamily::CanonicalEvenLog) {
            return p * std::pow(std::log(nu), p - 1.0) / nu;
        }
        const double w = std::numbers::e + 1.0 / nu;
        return p * std::pow(std::log(w), p - 1.0) * (-1.0 / (nu * nu)) / w;
    }

    /// log of the power and cutoff part with an extra factor nu^{-shift}:
    /// (alpha - shift) ln nu - lambda nu.
    template <class T>
    T log_envelope(T nu, double shift = 0.0) const {
        return (p_.alpha0 - shift) * std::log(nu) - p_.cutoff * nu;
    }

    /// Omega(nu) nu^{-shift}, evaluated without intermediate overflow.
    template <class T>
    T omega_shifted(T nu, double shift = 0.0) const {
        const T le = log_envelope(nu, shift);
        if (std::real(le) < -745.0) return T(0.0);
        return p_.amplitude * std::exp(le) * log_factor(nu);
    }

    /// Omega(nu); Omega(0) = 0 by continuity.
    double omega(double nu) const {
        if (nu < 0.0 || std::isnan(nu)) throw InvalidParameter("eval_omega: nu must be positive");
        if (nu == 0.0) return 0.0;
        const double v = omega_shifted(nu);
        if (!std::isfinite(v)) throw InvalidParameter("eval_omega: non-finite result");
        return v;
    }

    /// d Omega / d nu on the real axis.
    double omega_derivative(double nu) const {
        const double base = p_.amplitude * std::exp(log_envelope(nu));
        const double l = log_factor(nu);
        return base * ((p_.alpha0 / nu - p_.cutoff) * l + log_factor_derivative(nu));
    }

private:
    SpectralParams p_;
};

/// Dimensionless temperature theta = 2 k_B T / (hbar Delta); zero means T = 0.
struct BathSpec {
    double theta = 0.0;

    explicit BathSpec(double t = 0.0) : theta(t) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("theta must be non-negative");
    }
    bool thermal() const noexcept { return theta > 0.0; }
};

/// coth(x), switching to the Laurent series 1/x + x/3 - x^3/45 for |x| < 1e-3.
template <class T>
T coth_stable(T x) {
    if (std::abs(x) < 1e-3) {
        const T x2 = x * x;
        return T(1.0) / x + x / 3.0 - x * x2 / 45.0;
    }
    if (std::real(x) > 20.0) {
        // coth x = 1 + 2 e^{-2x} / (1 - e^{-2x})
        const T e = std::exp(-2.0 * x);
        return T(1.0) + 2.0 * e / (T(1.0) - e);
    }
    return T(1.0) / std::tanh(x);
}

/// Occupation weight coth(nu / theta) on the real axis or complex plane; 1 when theta = 0.
template <class T>
T thermal_weight(const BathSpec& bath, T nu) {
    if (!bath.thermal()) return T(1.0);
    return coth_stable(nu / bath.theta);
}

inline double eval_omega(const SpectralModel& model, double nu) {
    if (!(nu > 0.0)) throw InvalidParameter("eval_omega: nu must be positive");
    return model.omega(nu);
}

inline double eval_omega_thermal(const SpectralModel& model, const BathSpec& bath, double nu) {
    if (!bath.thermal()) throw DomainError("eval_omega_thermal: theta = 0, use eval_omega");
    if (!(nu > 0.0)) throw InvalidParameter("eval_omega_thermal: nu must be positive");
    const double v = model.omega(nu) * coth_stable(nu / bath.theta);
    if (!std::isfinite(v)) throw InvalidParameter("eval_omega_thermal: non-finite result");
    return v;
}

enum class MomentKind { L0, LT, FirstNegMoment, SecondNegMoment };

inline std::string to_string(MomentKind k) {
    switch (k) {
        case MomentKind::L0: return "L0";
        case MomentKind::LT: return "LT";
        case MomentKind::FirstNegMoment: return "FirstNegMoment";
        default: return "SecondNegMoment";
    }
}

/// A frequency moment of Omega_(T). `value` is empty when the integral diverges.
/// Values are dimensionless: l_0 = Delta^2 * value for L0, and the second negative
/// moment equals the asymptotic dephasing factor directly.
struct MomentReport {
    std::optional<double> value;
    MomentKind which = MomentKind::L0;
    double error_estimate = 0.0;

    bool finite() const noexcept { return value.has_value(); }
};

/// Analytic convergence test for int_0 Omega_(T)(nu) nu^{-k} dnu at the origin.
/// Near 0 the integrand behaves as nu^{alpha - k - [theta>0]} (-ln nu)^p.
inline bool moment_is_finite(const SpectralModel& model, const BathSpec& bath, MomentKind which) {
    int k = 0;
    switch (which) {
        case MomentKind::L0: k = 0; break;
        case MomentKind::LT: k = 0; break;
        case MomentKind::FirstNegMoment: k = 1; break;
        case MomentKind::SecondNegMoment: k = 2; break;
    }
    // L0 never carries the thermal weight.
    const int thermal = (which == MomentKind::L0) ? 0 : (bath.thermal() ? 1 : 0);
    const double exponent = model.alpha0() - k - thermal; // integrand ~ nu^{exponent}
    if (exponent > -1.0) return true;
    if (exponent == -1.0 && model.family() == LogFamily::GeneralLog && model.log_power() < -1.0)
        return true;
    return false;
}

inline MomentReport moment(const SpectralModel& model, const BathSpec& bath, MomentKind which,
                           const quad::QuadratureConfig& cfg = {}) {
    MomentReport rep;
    rep.which = which;
    if (!moment_is_finite(model, bath, which)) return rep;
    double shift = 0.0;
    bool use_weight = bath.thermal();
    switch (which) {
        case MomentKind::L0: shift = 0.0; use_weight = false; break;
        case MomentKind::LT: shift = 0.0; break;
        case MomentKind::FirstNegMoment: shift = 1.0; break;
        case MomentKind::SecondNegMoment: shift = 2.0; break;
    }
    auto f = [&](double nu) {
        if (nu <= 0.0) return 0.0;
        const double w = use_weight ? thermal_weight(bath, nu) : 1.0;
        return model.omega_shifted(nu, shift) * w;
    };
    auto r = quad::integrate_tail(f, cfg);
    rep.value = r.value;
    rep.error_estimate = r.error_estimate;
    return rep;
}

} // namespace dephase
