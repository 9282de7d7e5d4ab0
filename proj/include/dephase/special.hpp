// special.hpp - Gamma-family functions on real and complex arguments.
//
// Real Gamma uses std::tgamma. Complex log-Gamma uses a Lanczos sum (g = 7, n = 9),
// which is good to about 15 significant digits away from the poles. Polygamma
// functions use upward recurrence followed by the Stirling-type asymptotic series.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <vector>

namespace dephase::special {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} for k = 1..12
inline constexpr std::array<double, 12> bernoulli_even = {
    1.0 / 6.0,        -1.0 / 30.0,       1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,   7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0, 854513.0 / 138.0,   -236364091.0 / 2730.0};

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace detail

inline bool is_integer(double x, double tol = 1e-12) {
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

/// sin(pi x / 2), exactly zero or +-1 at integer x.
inline double sin_half_pi(double x) {
    if (is_integer(x)) {
        const long long k = std::llround(x);
        switch (((k % 4) + 4) % 4) {
            case 0: return 0.0;
            case 1: return 1.0;
            case 2: return 0.0;
            default: return -1.0;
        }
    }
    return std::sin(std::numbers::pi * x / 2.0);
}

/// cos(pi x / 2), exactly zero or +-1 at integer x.
inline double cos_half_pi(double x) {
    if (is_integer(x)) {
        const long long k = std::llround(x);
        switch (((k % 4) + 4) % 4) {
            case 0: return 1.0;
            case 1: return 0.0;
            case 2: return -1.0;
            default: return 0.0;
        }
    }
    return std::cos(std::numbers::pi * x / 2.0);
}

/// log Gamma(z) on the principal branch for complex z (reflection for Re z < 1/2).
inline std::complex<double> log_gamma(std::complex<double> z) {
    using C = std::complex<double>;
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(C(pi, 0.0)) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    C x = detail::lanczos_coef[0];
    for (std::size_t i = 1; i < detail::lanczos_coef.size(); ++i)
        x += detail::lanczos_coef[i] / (z + static_cast<double>(i));
    const C t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0)
        return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

inline double gamma(double x) { return std::tgamma(x); }

/// Polygamma psi^{(n)}(z), n >= 0 (n = 0 is the digamma function).
template <class T>
T polygamma(int n, T z) {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>);
    constexpr double shift_to = 20.0;
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    const double nfact = detail::factorial(n);
    T acc = 0.0;
    // psi^{(n)}(z) = psi^{(n)}(z+1) - (-1)^n n! / z^{n+1}
    while (std::real(z) < shift_to) {
        acc -= sign_n * nfact / std::pow(z, n + 1);
        z += 1.0;
    }
    const T inv = 1.0 / z;
    T series = 0.0;
    if (n == 0) {
        T zpow = inv * inv;
        T sum = 0.0;
        for (std::size_t k = 1; k <= detail::bernoulli_even.size(); ++k) {
            sum += detail::bernoulli_even[k - 1] / (2.0 * k) * zpow;
            zpow *= inv * inv;
        }
        series = std::log(z) - 0.5 * inv - sum;
    } else {
        // (-1)^{n+1} [ (n-1)!/z^n + n!/(2 z^{n+1}) + sum_k B_2k (2k+n-1)! / ((2k)! z^{2k+n}) ]
        const T zn = std::pow(inv, n);
        T sum = detail::factorial(n - 1) * zn + nfact * 0.5 * zn * inv;
        T zpow = zn * inv * inv;
        for (std::size_t k = 1; k <= detail::bernoulli_even.size(); ++k) {
            const int kk = static_cast<int>(k);
            sum += detail::bernoulli_even[k - 1] * detail::factorial(2 * kk + n - 1) /
                   detail::factorial(2 * kk) * zpow;
            zpow *= inv * inv;
        }
        series = -sign_n * sum;
    }
    return acc + series;
}

template <class T>
T digamma(T z) { return polygamma(0, z); }

/// Complete Bell polynomials Y_0..Y_K of the sequence (d1, ..., dK):
/// if h' = d1, h'' = d2, ... then (d/dx)^k exp(h) = exp(h) Y_k.
template <class T>
std::vector<T> bell_polynomials(const std::vector<T>& derivs) {
    const std::size_t K = derivs.size();
    std::vector<T> y(K + 1, T(0.0));
    y[0] = 1.0;
    for (std::size_t n = 0; n < K; ++n) {
        T s = 0.0;
        double binom = 1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            s += binom * y[n - k] * derivs[k];
            binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        y[n + 1] = s;
    }
    return y;
}

/// Gamma^{(k)}(x) for k = 0..K at real x (x not a non-positive integer).
inline std::vector<double> gamma_derivatives(double x, int K) {
    std::vector<double> d;
    for (int j = 0; j < K; ++j) d.push_back(polygamma(j, x));
    auto y = bell_polynomials(d);
    const double g = gamma(x);
    for (auto& v : y) v *= g;
    return y;
}

/// Generalised binomial coefficient C(beta, k) for real beta.
inline double binomial(double beta, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (beta - i) / (i + 1);
    return r;
}

} // namespace dephase::special
