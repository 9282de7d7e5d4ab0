// dynamics.hpp - dephasing factor, dephasing rate and coherence of the qubit.
//
// With z = nu * tau,
//   gamma(tau)/Delta = int_0^inf Omega_T(nu)/nu   sin(z) dnu
//   Xi(tau)          = int_0^inf Omega_T(nu)/nu^2 (1 - cos z) dnu
// where Omega_T = Omega coth(nu/theta) (Omega itself at theta = 0).
//
// The integrands continue analytically into the right half plane, so both integrals
// are taken along a ray nu = r e^{i phi}. For phi = atan(tau/lambda) the factor
// exp(-lambda nu + i nu tau) stops oscillating and the Fourier integral turns into a
// Laplace integral without cancellation, which keeps full relative accuracy at any tau.
// When a term that is real (or imaginary) on the real axis has to be added to make the
// origin integrable, or when coth poles at i pi k theta sit close to the ray, the angle
// is capped at pi/4.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/spectral_density.hpp"

namespace dephase {

using cplx = std::complex<double>;

namespace detail {

// exp(z) - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
    const double x = z.real(), y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// 1 - e^{iz} + iz, which is O(z^2) at the origin.
inline cplx one_minus_exp_plus(cplx z) {
    const cplx iz = cplx(0.0, 1.0) * z;
    if (std::abs(z) < 0.5) {
        cplx term = iz;
        cplx sum = 0.0;
        for (int n = 2; n < 30; ++n) {
            term *= iz / static_cast<double>(n);
            sum -= term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return -expm1(iz) + iz;
}

} // namespace detail

/// A scalar with its quadrature error estimate.
struct Estimate {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Evaluator bound to one (model, bath, config); caches the asymptotic moment.
class Dynamics {
public:
    Dynamics(SpectralModel model, BathSpec bath, quad::QuadratureConfig cfg = {})
        : model_(std::move(model)), bath_(bath), cfg_(cfg) {
        cfg_.validate();
    }

    const SpectralModel& model() const noexcept { return model_; }
    const BathSpec& bath() const noexcept { return bath_; }
    const quad::QuadratureConfig& config() const noexcept { return cfg_; }

    /// Second negative moment of Omega_T, i.e. Xi(infinity); empty if it diverges.
    const MomentReport& asymptotic_moment() const {
        if (!moment_) moment_ = moment(model_, bath_, MomentKind::SecondNegMoment, cfg_);
        return *moment_;
    }

    /// gamma(tau)/Delta.
    Estimate rate(double tau) const {
        if (!(tau >= 0.0)) throw InvalidParameter("dephasing_rate: tau must be non-negative");
        if (tau == 0.0) return {};
        const bool plain = !bath_.thermal() || model_.alpha0() > 1.0;
        const double phi = ray_angle(tau, plain);
        const double rate = decay_rate(tau, phi);
        const double lambda = model_.cutoff();
        const cplx i(0.0, 1.0);
        auto g = [&](cplx nu) -> cplx {
            if (nu == 0.0) return 0.0;
            if (plain) return model_.amplitude() * weighted_exp(model_.log_envelope(nu, 1.0) + i * nu * tau, nu) *
                              model_.log_factor(nu);
            // e^{i z} - e^{-lambda nu}: the subtracted term is real on the real axis.
            const cplx bracket = detail::expm1(i * nu * tau) - detail::expm1(-lambda * nu);
            return model_.amplitude() * weighted_exp(model_.log_envelope(nu, 1.0), nu) * model_.log_factor(nu) *
                   bracket;
        };
        auto r = integrate(g, phi, rate, "dephasing_rate", /*imag=*/true);
        return {r.value.imag(), r.error_estimate};
    }

    /// Xi(tau).
    Estimate factor(double tau) const {
        if (!(tau >= 0.0)) throw InvalidParameter("dephasing_factor: tau must be non-negative");
        if (tau == 0.0) return {};
        const MomentReport& m = asymptotic_moment();
        const cplx i(0.0, 1.0);
        const double lambda = model_.cutoff();
        if (m.finite()) {
            try {
                auto c = oscillatory_part(tau);
                return {*m.value - c.value, m.error_estimate + c.error_estimate};
            } catch (const AccuracyError& e) {
                throw AccuracyError(e.what(), *m.value - e.partial_value(), e.error_estimate());
            }
        }
        const double phi = ray_angle(tau, false);
        const double rate = decay_rate(tau, phi);
        auto g = [&](cplx nu) -> cplx {
            if (nu == 0.0) return 0.0;
            const cplx z = nu * tau;
            // 1 - e^{iz} + i z e^{-lambda nu}: the added term is imaginary on the real axis.
            const cplx bracket = detail::one_minus_exp_plus(z) + i * z * detail::expm1(-lambda * nu);
            return model_.amplitude() * weighted_exp(model_.log_envelope(nu, 2.0), nu) * model_.log_factor(nu) *
                   bracket;
        };
        auto r = integrate(g, phi, rate, "dephasing_factor", /*imag=*/false);
        return {r.value.real(), r.error_estimate};
    }

    /// int_0^inf Omega_T(nu)/nu^2 cos(nu tau) dnu, defined when Xi(infinity) is finite.
    /// Xi(tau) = Xi(infinity) - oscillatory_part(tau).
    Estimate oscillatory_part(double tau) const {
        if (!asymptotic_moment().finite())
            throw DivergentIntegrand("oscillatory_part: second negative moment diverges");
        if (tau == 0.0) return {*asymptotic_moment().value, asymptotic_moment().error_estimate};
        const double phi = ray_angle(tau, true);
        const double rate = decay_rate(tau, phi);
        const cplx i(0.0, 1.0);
        auto g = [&](cplx nu) -> cplx {
            if (nu == 0.0) return 0.0;
            return model_.amplitude() * weighted_exp(model_.log_envelope(nu, 2.0) + i * nu * tau, nu) *
                   model_.log_factor(nu);
        };
        auto r = integrate(g, phi, rate, "dephasing_factor", /*imag=*/false);
        return {r.value.real(), r.error_estimate};
    }

    /// |rho01(t)/rho01(0)| = exp(-Xi).
    double coherence(double tau) const { return std::exp(-factor(tau).value); }

private:
    // exp(le) * coth(nu/theta), with the weight taken inside the exponent so that tiny
    // nu^k envelopes do not pass through subnormal range before the 1/nu growth of coth.
    cplx weighted_exp(cplx le, cplx nu) const {
        if (bath_.thermal()) le += std::log(thermal_weight(bath_, nu));
        if (!(le.real() >= -745.0)) return 0.0;
        return std::exp(le);
    }

    double ray_angle(double tau, bool plain) const {
        const double lambda = model_.cutoff();
        const double steepest = std::atan2(tau, lambda);
        if (!plain) return std::min(steepest, std::numbers::pi / 4.0);
        if (!bath_.thermal()) return steepest;
        // Keep clear of the coth poles at i pi k theta unless exp(-pi theta R) buries them.
        const double R = std::hypot(tau, lambda);
        const double margin = 50.0 + (model_.alpha0() + 2.0) * std::log(std::max(R, 1.0));
        if (std::numbers::pi * bath_.theta * R >= margin) return steepest;
        return std::min(steepest, std::numbers::pi / 4.0);
    }

    double decay_rate(double tau, double phi) const {
        return model_.cutoff() * std::cos(phi) + tau * std::sin(phi);
    }

    // Throws AccuracyError carrying the requested component as the partial value.
    template <class G>
    quad::IntegralValue<cplx> integrate(G& g, double phi, double rate, const char* who,
                                        bool imag) const {
        auto r = quad::integrate_ray(g, phi, rate, cfg_, false);
        if (!r.converged) {
            throw AccuracyError(std::string(who) + ": tolerance not reached",
                                imag ? r.value.imag() : r.value.real(), r.error_estimate);
        }
        return r;
    }

    SpectralModel model_;
    BathSpec bath_;
    quad::QuadratureConfig cfg_;
    mutable std::optional<MomentReport> moment_;
};

inline double dephasing_factor(const SpectralModel& model, const BathSpec& bath, double tau,
                               const quad::QuadratureConfig& cfg = {}) {
    return Dynamics(model, bath, cfg).factor(tau).value;
}

inline double dephasing_rate(const SpectralModel& model, const BathSpec& bath, double tau,
                             const quad::QuadratureConfig& cfg = {}) {
    return Dynamics(model, bath, cfg).rate(tau).value;
}

inline double coherence_ratio(const SpectralModel& model, const BathSpec& bath, double tau,
                              const quad::QuadratureConfig& cfg = {}) {
    return Dynamics(model, bath, cfg).coherence(tau);
}

/// exp(-Xi(infinity)) when the second negative moment is finite; empty means full decoherence.
inline std::optional<double> asymptotic_coherence(const SpectralModel& model, const BathSpec& bath,
                                                  const quad::QuadratureConfig& cfg = {}) {
    auto m = moment(model, bath, MomentKind::SecondNegMoment, cfg);
    if (!m.finite()) return std::nullopt;
    return std::exp(-*m.value);
}

struct SeriesResult {
    std::vector<double> tau_grid;
    std::vector<double> xi;
    std::vector<double> gamma;
    std::vector<double> coherence_ratio;
    std::vector<double> xi_err;
    std::vector<double> gamma_err;
    std::vector<std::string> failures; // empty string: point succeeded

    bool all_ok() const {
        return std::all_of(failures.begin(), failures.end(), [](const auto& s) { return s.empty(); });
    }
};

/// Worker count: DEPHASE_LAB_THREADS when set, otherwise hardware concurrency.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DEPHASE_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

/// Evaluates Xi, gamma and exp(-Xi) on a sorted grid. Failures are recorded per point.
inline SeriesResult compute_series(const SpectralModel& model, const BathSpec& bath,
                                   const std::vector<double>& tau_grid,
                                   const quad::QuadratureConfig& cfg = {}, unsigned threads = 0) {
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
        throw InvalidParameter("compute_series: grid must be sorted");
    if (!tau_grid.empty() && tau_grid.front() < 0.0)
        throw InvalidParameter("compute_series: grid must be non-negative");
    const std::size_t n = tau_grid.size();
    SeriesResult out;
    out.tau_grid = tau_grid;
    out.xi.assign(n, 0.0);
    out.gamma.assign(n, 0.0);
    out.coherence_ratio.assign(n, 1.0);
    out.xi_err.assign(n, 0.0);
    out.gamma_err.assign(n, 0.0);
    out.failures.assign(n, "");

    const Dynamics dyn(model, bath, cfg);
    (void)dyn.asymptotic_moment(); // fill the cache before workers share it

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < n; k += stride) {
            const double tau = tau_grid[k];
            try {
                const auto x = dyn.factor(tau);
                out.xi[k] = x.value;
                out.xi_err[k] = x.error_estimate;
                out.coherence_ratio[k] = std::exp(-x.value);
            } catch (const AccuracyError& e) {
                out.xi[k] = e.partial_value();
                out.xi_err[k] = std::numeric_limits<double>::infinity();
                out.coherence_ratio[k] = std::exp(-e.partial_value());
                out.failures[k] = e.what();
            }
            try {
                const auto g = dyn.rate(tau);
                out.gamma[k] = g.value;
                out.gamma_err[k] = g.error_estimate;
            } catch (const AccuracyError& e) {
                out.gamma[k] = e.partial_value();
                out.gamma_err[k] = std::numeric_limits<double>::infinity();
                if (out.failures[k].empty()) out.failures[k] = e.what();
            }
        }
    };

    if (threads == 0) threads = worker_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }
    return out;
}

} // namespace dephase
