#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "lnssm/error.hpp"
#include "lnssm/special.hpp"

// Forecast verification: sample-based CRPS and IGN (lower is better for
// both), highest posterior density intervals, empirical coverage, and paired
// t-tests with a Holm step-down adjustment.

namespace lnssm {

// Posterior-predictive samples per forecast horizon: samples[draw][h].
struct ForecastEnsemble {
    std::vector<std::vector<double>> samples;

    std::size_t n_draws() const { return samples.size(); }
    std::size_t horizon() const { return samples.empty() ? 0 : samples.front().size(); }

    std::vector<double> column(std::size_t h) const {
        std::vector<double> out;
        out.reserve(samples.size());
        for (const auto& row : samples) out.push_back(row.at(h));
        return out;
    }
};

// Energy-form CRPS estimator, exact double sum computed in O(m log m)
// through sorted prefix coefficients.
inline double crps_sample(std::span<const double> ensemble, double y) {
    const std::size_t m = ensemble.size();
    require_domain(m >= 2, "crps_sample: ensemble must have at least 2 members");
    std::vector<double> xs(ensemble.begin(), ensemble.end());
    std::sort(xs.begin(), xs.end());

    double abs_err = 0.0;
    double pair_term = 0.0;
    const double dm = static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        abs_err += std::fabs(xs[k] - y);
        pair_term += (2.0 * static_cast<double>(k) - dm + 1.0) * xs[k];
    }
    return abs_err / dm - pair_term / (dm * dm);
}

struct KdeRule {
    enum class Scale { natural, log_scale };
    Scale scale = Scale::natural;
    double bandwidth = 0.0;  // 0 -> Silverman's rule
};

namespace detail {

inline double silverman_bandwidth(std::vector<double> xs) {
    const std::size_t m = xs.size();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(m - 1));
    std::sort(xs.begin(), xs.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(m - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, m - 1);
        const double w = pos - static_cast<double>(lo);
        return (1.0 - w) * xs[lo] + w * xs[hi];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    return 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
}

inline double gaussian_kde_logpdf(const std::vector<double>& xs, double z, double h) {
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(xs.size());
    for (double x : xs) {
        const double u = (z - x) / h;
        const double t = -0.5 * u * u;
        terms.push_back(t);
        max_term = std::max(max_term, t);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    return max_term + std::log(acc) - std::log(static_cast<double>(xs.size())) -
           std::log(h) - 0.5 * std::log(2.0 * M_PI);
}

}  // namespace detail

// Ignorance score: -log of a Gaussian KDE evaluated at y.
inline double ign_sample(std::span<const double> ensemble, double y,
                         const KdeRule& rule = {}) {
    const std::size_t m = ensemble.size();
    require_domain(m >= 2, "ign_sample: ensemble must have at least 2 members");

    std::vector<double> xs(ensemble.begin(), ensemble.end());
    double z = y;
    if (rule.scale == KdeRule::Scale::log_scale) {
        require_domain(y > 0.0, "ign_sample: log-scale KDE needs positive y");
        for (double& x : xs) {
            require_domain(x > 0.0, "ign_sample: log-scale KDE needs positive samples");
            x = std::log(x);
        }
        z = std::log(y);
    }

    double h = rule.bandwidth;
    if (h <= 0.0) h = detail::silverman_bandwidth(xs);
    if (!(h > 0.0) || !std::isfinite(h))
        throw numeric_error("ign_sample: degenerate (zero-variance) ensemble");

    double log_f = detail::gaussian_kde_logpdf(xs, z, h);
    if (rule.scale == KdeRule::Scale::log_scale) log_f -= std::log(y);
    return -log_f;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
};

// Shortest contiguous interval over the sorted sample containing
// ceil(level*m) points; ties resolved toward the lowest starting index.
inline Interval hpd_interval(std::span<const double> samples, double level) {
    require_domain(!samples.empty(), "hpd_interval: empty sample");
    require_domain(level > 0.0 && level < 1.0, "hpd_interval: level must be in (0,1)");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size();
    std::size_t k = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(m)));
    k = std::clamp<std::size_t>(k, 1, m);

    std::size_t best = 0;
    double best_width = xs[k - 1] - xs[0];
    for (std::size_t i = 1; i + k <= m; ++i) {
        const double w = xs[i + k - 1] - xs[i];
        if (w < best_width) {
            best_width = w;
            best = i;
        }
    }
    return Interval{xs[best], xs[best + k - 1]};
}

inline double coverage(std::span<const Interval> intervals, double truth) {
    require_domain(!intervals.empty(), "coverage: empty interval set");
    std::size_t hit = 0;
    for (const auto& iv : intervals)
        if (iv.contains(truth)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(intervals.size());
}

struct PairedScores {
    std::string name;
    std::vector<double> a;
    std::vector<double> b;
};

struct PairedTestResult {
    std::string name;
    double t = 0.0;
    int df = 0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    bool significant = false;
};

// Paired t-tests over a family of aligned score vectors, Holm-adjusted.
inline std::vector<PairedTestResult> paired_t_holm(
    const std::vector<PairedScores>& family, double alpha = 0.05) {
    std::vector<PairedTestResult> results;
    results.reserve(family.size());
    for (const auto& pair : family) {
        require_domain(pair.a.size() == pair.b.size() && pair.a.size() >= 2,
                       "paired_t_holm: pair '" + pair.name +
                           "' needs aligned vectors of length >= 2");
        const std::size_t n = pair.a.size();
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += pair.a[i] - pair.b[i];
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = pair.a[i] - pair.b[i] - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (!(sd > 0.0))
            throw numeric_error("paired_t_holm: zero-variance differences in pair '" +
                                pair.name + "'");
        PairedTestResult r;
        r.name = pair.name;
        r.df = static_cast<int>(n) - 1;
        r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
        r.p_raw = student_t_two_sided_p(r.t, static_cast<double>(r.df));
        results.push_back(r);
    }

    // Holm step-down: multiply by (k - rank), enforce monotonicity.
    const std::size_t k = results.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return results[i].p_raw < results[j].p_raw;
    });
    double running = 0.0;
    for (std::size_t rank = 0; rank < k; ++rank) {
        auto& r = results[order[rank]];
        const double adj = std::min(1.0, static_cast<double>(k - rank) * r.p_raw);
        running = std::max(running, adj);
        r.p_adjusted = running;
        r.significant = running <= alpha;
    }
    return results;
}

// Mean CRPS/IGN per (fitting model row, generating model column) with counts
// and standard errors of the cell means.
struct ScoreTable {
    std::vector<std::string> generators;  // columns
    std::vector<std::string> fitters;     // rows

    struct Cell {
        double mean_crps = 0.0;
        double mean_ign = 0.0;
        double se_crps = 0.0;
        double se_ign = 0.0;
        std::size_t count = 0;
    };
    std::vector<std::vector<Cell>> cells;  // [fitter][generator]

    const Cell& at(std::size_t fitter, std::size_t generator) const {
        return cells.at(fitter).at(generator);
    }
};

}  // namespace lnssm
