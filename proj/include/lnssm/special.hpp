#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "lnssm/error.hpp"

// Small numerical special-function kit: regularized incomplete beta (for the
// Student-t CDF), normal CDF, and the asymptotic Kolmogorov distribution.

namespace lnssm {

inline constexpr double kLog2Pi = 1.8378770664093454836;

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz).
inline double beta_cont_frac(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
    require_domain(a > 0.0 && b > 0.0, "reg_inc_beta: a, b must be positive");
    require_domain(x >= 0.0 && x <= 1.0, "reg_inc_beta: x must be in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(ln_front) * detail::beta_cont_frac(a, b, x) / a;
    }
    return 1.0 - std::exp(ln_front) * detail::beta_cont_frac(b, a, 1.0 - x) / b;
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double student_t_cdf(double t, double df) {
    require_domain(df > 0.0, "student_t_cdf: df must be positive");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

inline double student_t_two_sided_p(double t, double df) {
    require_domain(df > 0.0, "student_t_two_sided_p: df must be positive");
    if (t == 0.0) return 1.0;
    return reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
}

// P(D > d) for the Kolmogorov statistic, asymptotic series with the
// Stephens small-sample correction applied to d beforehand.
inline double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    double p = 2.0 * sum;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

inline double ks_pvalue(double d_stat, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d_stat);
}

}  // namespace lnssm
