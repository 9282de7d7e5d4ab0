#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dephase/dynamics.hpp"
#include "dephase/error.hpp"

using namespace dephase;
using cd = std::complex<double>;

namespace {

SpectralModel make(double alpha, double p, double lambda = 1.0,
                   LogFamily fam = LogFamily::CanonicalEvenLog, double A = 1.0) {
    SpectralParams s;
    s.alpha0 = alpha;
    s.log_power = p;
    s.cutoff = lambda;
    s.family = fam;
    s.amplitude = A;
    return SpectralModel(s);
}

// int nu^{a-1} e^{-l nu} e^{i nu tau} = Gamma(a) (l - i tau)^{-a}
cd laplace(double a, double l, double tau) { return std::tgamma(a) * std::pow(cd(l, -tau), -a); }

double gamma_exact(double alpha, double l, double tau) { return laplace(alpha, l, tau).imag(); }

double xi_exact(double alpha, double l, double tau) {
    // alpha > 1: Xi = Gamma(a)[l^{-a} - Re (l - i tau)^{-a}] with a = alpha - 1
    const double a = alpha - 1.0;
    return std::tgamma(a) * std::pow(l, -a) - laplace(a, l, tau).real();
}

} // namespace

TEST(Dynamics, OriginValues) {
    for (double th : {0.0, 1.0}) {
        Dynamics d(make(1.5, 2.0), BathSpec(th));
        EXPECT_EQ(d.rate(0.0).value, 0.0);
        EXPECT_EQ(d.factor(0.0).value, 0.0);
        EXPECT_EQ(d.coherence(0.0), 1.0);
        EXPECT_THROW(d.rate(-1.0), InvalidParameter);
        EXPECT_THROW(d.factor(-1.0), InvalidParameter);
    }
}

TEST(Dynamics, RateLaplaceSineClosedForm) {
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (double l : {0.5, 2.0})
            for (double tau : {0.01, 1.0, 30.0, 1e3, 1e6}) {
                const double exact = gamma_exact(a, l, tau);
                EXPECT_NEAR(dephasing_rate(make(a, 0.0, l), BathSpec(0.0), tau) / exact, 1.0, 1e-9)
                    << a << " " << l << " " << tau;
            }
}

TEST(Dynamics, FactorLaplaceCosineClosedForm) {
    for (double a : {1.5, 2.0, 3.0})
        for (double l : {0.5, 2.0})
            for (double tau : {0.01, 1.0, 30.0, 1e3}) {
                const double exact = xi_exact(a, l, tau);
                EXPECT_NEAR(dephasing_factor(make(a, 0.0, l), BathSpec(0.0), tau) / exact, 1.0, 1e-9)
                    << a << " " << l << " " << tau;
            }
}

TEST(Dynamics, OhmicFactorLogarithmicGrowth) {
    // alpha = 1: Xi = ln(1 + tau^2/l^2)/2
    for (double l : {0.5, 1.0})
        for (double tau : {0.01, 2.0, 1e4, 1e8})
            EXPECT_NEAR(dephasing_factor(make(1.0, 0.0, l), BathSpec(0.0), tau),
                        0.5 * std::log1p(tau * tau / (l * l)), 1e-8 * std::log1p(tau * tau / (l * l)));
}

TEST(Dynamics, SubOhmicFactorClosedForm) {
    // alpha = 0.5: Xi = Gamma(-1/2)[l^{1/2} - Re (l - i tau)^{1/2}]
    const double tau = 50.0;
    const double exact = std::tgamma(-0.5) * (1.0 - std::pow(cd(1.0, -tau), 0.5).real());
    EXPECT_NEAR(dephasing_factor(make(0.5, 0.0), BathSpec(0.0), tau) / exact, 1.0, 1e-9);
}

TEST(Dynamics, OscillatoryPartGivesRelaxationAtFullPrecision) {
    // Xi - Xi(inf) = -Re Gamma(a)(1 - i tau)^{-a} for alpha = 4.5, far below the constant
    Dynamics d(make(4.5, 0.0), BathSpec(0.0));
    const double tau = 1e4;
    EXPECT_NEAR(-d.oscillatory_part(tau).value / -laplace(3.5, 1.0, tau).real(), 1.0, 1e-9);
    EXPECT_THROW(Dynamics(make(1.0, 0.0), BathSpec(0.0)).oscillatory_part(1.0), DivergentIntegrand);
}

TEST(Dynamics, ThermalRayAgreesWithZeroPartition) {
    // Two unrelated routes: complex ray vs real-axis panels with extrapolation.
    quad::QuadratureConfig cfg;
    for (double alpha : {0.5, 1.0, 2.5})
        for (double th : {0.3, 2.0})
            for (double tau : {2.0, 15.0}) {
                auto m = make(alpha, 2.0, 1.0);
                BathSpec b(th);
                auto fr = [&](double nu) { return m.omega_shifted(nu, 1.0) * coth_stable(nu / th); };
                auto fx = [&](double nu) { return m.omega_shifted(nu, 2.0) * coth_stable(nu / th); };
                const double gr = quad::integrate_oscillatory(fr, quad::Kernel::Sin, tau, cfg, true).value;
                const double xr = quad::integrate_oscillatory(fx, quad::Kernel::OneMinusCos, tau, cfg, true).value;
                EXPECT_NEAR(dephasing_rate(m, b, tau) / gr, 1.0, 1e-7) << alpha << " " << th << " " << tau;
                EXPECT_NEAR(dephasing_factor(m, b, tau) / xr, 1.0, 1e-7) << alpha << " " << th << " " << tau;
            }
}

TEST(Dynamics, ThermalOhmicRateConvergesToConstant) {
    // alpha = 1, p = 0: gamma -> pi theta / 2
    const double th = 0.8;
    EXPECT_NEAR(dephasing_rate(make(1.0, 0.0), BathSpec(th), 1e5), std::numbers::pi * th / 2.0, 1e-4);
}

TEST(Dynamics, RateIsDerivativeOfFactor) {
    for (auto m : {make(1.5, 2.0), make(3.5, 0.0, 0.5), make(2.5, -1.5, 1.0, LogFamily::GeneralLog)})
        for (double th : {0.0, 1.0}) {
            Dynamics d(m, BathSpec(th));
            for (double tau : {0.3, 2.0, 10.0}) {
                const double h = 1e-4 * tau;
                const double fd = (d.factor(tau + h).value - d.factor(tau - h).value) / (2 * h);
                EXPECT_NEAR(d.rate(tau).value / fd, 1.0, 1e-6) << tau;
            }
        }
}

TEST(Dynamics, AsymptoticCoherence) {
    EXPECT_NEAR(*asymptotic_coherence(make(3.0, 0.0), BathSpec(0.0)), std::exp(-1.0), 1e-10);
    EXPECT_FALSE(asymptotic_coherence(make(1.0, 0.0), BathSpec(0.0)).has_value());
    EXPECT_FALSE(asymptotic_coherence(make(2.0, 0.0), BathSpec(1.0)).has_value());
    EXPECT_NEAR(coherence_ratio(make(3.0, 0.0), BathSpec(0.0), 1e4), std::exp(-1.0), 1e-7);
}

TEST(Dynamics, SeriesSingleZeroPoint) {
    auto s = compute_series(make(1.0, 0.0), BathSpec(0.0), {0.0});
    ASSERT_EQ(s.tau_grid.size(), 1u);
    EXPECT_EQ(s.xi[0], 0.0);
    EXPECT_EQ(s.gamma[0], 0.0);
    EXPECT_EQ(s.coherence_ratio[0], 1.0);
    EXPECT_EQ(s.xi_err[0], 0.0);
    EXPECT_EQ(s.gamma_err[0], 0.0);
    EXPECT_TRUE(s.all_ok());
}

TEST(Dynamics, SeriesIsIndependentOfThreadCount) {
    std::vector<double> g;
    for (int i = 0; i < 40; ++i) g.push_back(0.25 * i);
    auto m = make(2.5, 2.0, 1.2);
    auto a = compute_series(m, BathSpec(0.5), g, {}, 1);
    auto b = compute_series(m, BathSpec(0.5), g, {}, 4);
    EXPECT_EQ(a.xi, b.xi);
    EXPECT_EQ(a.gamma, b.gamma);
    EXPECT_EQ(a.coherence_ratio, b.coherence_ratio);
}

TEST(Dynamics, SeriesValidatesGrid) {
    EXPECT_THROW(compute_series(make(1.0, 0.0), BathSpec(0.0), {1.0, 0.5}), InvalidParameter);
    EXPECT_THROW(compute_series(make(1.0, 0.0), BathSpec(0.0), {-1.0, 0.5}), InvalidParameter);
}

TEST(Dynamics, ExtremeTimesStayFinite) {
    for (double th : {0.0, 1.0}) {
        Dynamics d(make(6.0, 2.0, 3e-5), BathSpec(th));
        for (double tau : {1e-8, 1e20, 1e64}) {
            EXPECT_TRUE(std::isfinite(d.rate(tau).value));
            EXPECT_TRUE(std::isfinite(d.factor(tau).value));
        }
    }
}

TEST(Dynamics, ThreadCapFromEnvironment) {
    ::setenv("DEPHASE_LAB_THREADS", "1", 1);
    EXPECT_EQ(worker_count(), 1u);
    ::unsetenv("DEPHASE_LAB_THREADS");
    EXPECT_GE(worker_count(), 1u);
}
