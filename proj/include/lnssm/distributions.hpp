#pragma once

#include <cmath>
#include <limits>

#include "lnssm/error.hpp"
#include "lnssm/random.hpp"
#include "lnssm/special.hpp"

// Probability primitives: the lognormal distribution in a precision
// parameterization, half-Cauchy priors, and the moment-matching transform
// between (mean, variance) and log-scale (location, precision).
//
// Precisions (inverse variances) are carried everywhere internally;
// conversion to variances happens only at API boundaries.

namespace lnssm {

// Log-scale location / precision view of a lognormal.
struct LogNormalParams {
    double mu_star = 0.0;
    double prec_star = 1.0;

    LogNormalParams() = default;
    LogNormalParams(double mu, double prec) : mu_star(mu), prec_star(prec) {
        require_domain(std::isfinite(mu_star),
                       "LogNormalParams: mu_star must be finite");
        require_domain(prec_star > 0.0 && std::isfinite(prec_star),
                       "LogNormalParams: prec_star must be positive and finite");
    }

    double log_variance() const { return 1.0 / prec_star; }
};

// Natural-scale (mean, variance) view of a positive random variable.
struct MomentPair {
    double mean = 1.0;
    double variance = 1.0;

    MomentPair() = default;
    MomentPair(double m, double v) : mean(m), variance(v) {
        require_domain(mean > 0.0 && std::isfinite(mean),
                       "MomentPair: mean must be positive and finite");
        require_domain(variance > 0.0 && std::isfinite(variance),
                       "MomentPair: variance must be positive and finite");
    }
};

struct HalfCauchyParams {
    double scale = 1.0;

    HalfCauchyParams() = default;
    explicit HalfCauchyParams(double gamma) : scale(gamma) {
        require_domain(scale > 0.0 && std::isfinite(scale),
                       "HalfCauchyParams: scale must be positive and finite");
    }
};

// (mean, variance) -> lognormal (mu*, prec*) with exactly that mean and
// variance. log1p keeps the log-variance accurate when variance/mean^2 is
// at the round-off floor.
inline LogNormalParams mm_transform(const MomentPair& m) {
    const double ratio = m.variance / (m.mean * m.mean);
    const double log_var = std::log1p(ratio);
    require_domain(log_var > 0.0 && std::isfinite(log_var),
                   "mm_transform: variance/mean^2 out of representable range");
    return LogNormalParams(std::log(m.mean) - 0.5 * log_var, 1.0 / log_var);
}

// Inverse of mm_transform via the lognormal mean/variance identities.
inline MomentPair mm_inverse(const LogNormalParams& p) {
    const double log_var = p.log_variance();
    const double mean = std::exp(p.mu_star + 0.5 * log_var);
    const double variance = std::expm1(log_var) * std::exp(2.0 * p.mu_star + log_var);
    return MomentPair(mean, variance);
}

inline double lognormal_logpdf(double x, const LogNormalParams& p) {
    require_domain(x > 0.0 && std::isfinite(x),
                   "lognormal_logpdf: x must be positive and finite");
    const double lx = std::log(x);
    const double z = lx - p.mu_star;
    return 0.5 * std::log(p.prec_star) - 0.5 * kLog2Pi - lx - 0.5 * p.prec_star * z * z;
}

inline double lognormal_sample(const LogNormalParams& p, RandomStream& rng) {
    return std::exp(p.mu_star + rng.normal() / std::sqrt(p.prec_star));
}

inline double halfcauchy_logpdf(double x, const HalfCauchyParams& h) {
    require_domain(x > 0.0 && std::isfinite(x),
                   "halfcauchy_logpdf: x must be positive and finite");
    const double r = x / h.scale;
    return std::log(2.0 / M_PI) - std::log(h.scale) - std::log1p(r * r);
}

inline double halfcauchy_sample(const HalfCauchyParams& h, RandomStream& rng) {
    return h.scale * std::tan(0.5 * M_PI * rng.uniform_open());
}

inline double halfcauchy_cdf(double x, const HalfCauchyParams& h) {
    if (x <= 0.0) return 0.0;
    return 2.0 / M_PI * std::atan(x / h.scale);
}

// Conditional mean / variance / median of f* exp(eps), eps ~ N(0, prec).
struct BiasedMoments {
    double mean;
    double variance;
    double median;
};

inline BiasedMoments biased_class_moments(double f_star, double prec) {
    require_domain(f_star > 0.0 && std::isfinite(f_star),
                   "biased_class_moments: f_star must be positive");
    require_domain(prec > 0.0, "biased_class_moments: prec must be positive");
    const double inv = 1.0 / prec;
    return BiasedMoments{f_star * std::exp(0.5 * inv),
                         f_star * f_star * std::exp(inv) * std::expm1(inv),
                         f_star};
}

// Normal log density in precision form; internal helper for the log-space
// representations of the models.
inline double normal_logpdf_prec(double x, double mean, double prec) {
    const double z = x - mean;
    return 0.5 * std::log(prec) - 0.5 * kLog2Pi - 0.5 * prec * z * z;
}

}  // namespace lnssm
