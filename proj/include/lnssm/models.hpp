#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lnssm/distributions.hpp"
#include "lnssm/error.hpp"
#include "lnssm/random.hpp"

// The six benchmark state space models. All share the structure
//   X_t | X_{t-1} ~ Lognormal(step_law), Y_i | X_i ~ Lognormal(obs_law):
//
//   Gompertz / MoranRicker  multiplicative noise around the process map
//                           (median-unbiased, density-dependent variance)
//   LGC / LMRC              moment matched, mean f*(x), constant variance 1/phi
//   LGD / LMRD              moment matched, mean f*(x), variance f*(x)^2/phi
//
// Because every conditional is lognormal, the log-states D_t = log X_t are
// conditionally normal; the samplers work in that representation.

namespace lnssm {

enum class ModelKind { Gompertz, MoranRicker, LGC, LMRC, LGD, LMRD };

inline constexpr ModelKind kAllModelKinds[] = {
    ModelKind::Gompertz, ModelKind::MoranRicker, ModelKind::LGC,
    ModelKind::LMRC,     ModelKind::LGD,         ModelKind::LMRD};

inline std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Gompertz: return "gompertz";
        case ModelKind::MoranRicker: return "moran_ricker";
        case ModelKind::LGC: return "lgc";
        case ModelKind::LMRC: return "lmrc";
        case ModelKind::LGD: return "lgd";
        case ModelKind::LMRD: return "lmrd";
    }
    throw domain_error("to_string: unknown ModelKind");
}

inline ModelKind model_kind_from_string(std::string_view name) {
    for (ModelKind kind : kAllModelKinds)
        if (to_string(kind) == name) return kind;
    throw data_error("unknown model kind '" + std::string(name) + "'");
}

inline bool is_gompertz_map(ModelKind kind) {
    return kind == ModelKind::Gompertz || kind == ModelKind::LGC ||
           kind == ModelKind::LGD;
}

inline bool is_biased(ModelKind kind) {
    return kind == ModelKind::Gompertz || kind == ModelKind::MoranRicker;
}

inline bool is_constant_variance(ModelKind kind) {
    return kind == ModelKind::LGC || kind == ModelKind::LMRC;
}

struct ModelParams {
    double a = 0.0;
    double b = 0.0;
    double proc_prec = 1.0;        // phi
    double obs_prec = 1.0;         // tau
    bool obs_prec_fixed = false;

    void validate() const {
        require_domain(std::isfinite(a) && std::isfinite(b),
                       "ModelParams: a, b must be finite");
        require_domain(proc_prec > 0.0 && std::isfinite(proc_prec),
                       "ModelParams: proc_prec must be positive");
        require_domain(obs_prec > 0.0 && std::isfinite(obs_prec),
                       "ModelParams: obs_prec must be positive");
    }
};

// Latent path on the natural scale. values holds X_1..X_T; X_0 is kept
// separately because the process density at t=1 conditions on it.
struct Trajectory {
    double t0_value = 1.0;
    std::vector<double> values;

    int length() const { return static_cast<int>(values.size()); }
    double at(int t) const { return t == 0 ? t0_value : values[static_cast<std::size_t>(t - 1)]; }
};

// Observations Y at a strictly increasing index subset of {1..T}.
struct ObservationSeries {
    std::vector<int> indices;
    std::vector<double> values;

    std::size_t size() const { return indices.size(); }

    void validate(int max_t = std::numeric_limits<int>::max()) const {
        require_domain(indices.size() == values.size(),
                       "ObservationSeries: indices/values length mismatch");
        for (std::size_t i = 0; i < indices.size(); ++i) {
            require_domain(indices[i] >= 1 && indices[i] <= max_t,
                           "ObservationSeries: index out of range");
            if (i > 0)
                require_domain(indices[i] > indices[i - 1],
                               "ObservationSeries: indices must be strictly increasing");
            require_domain(values[i] > 0.0 && std::isfinite(values[i]),
                           "ObservationSeries: values must be positive and finite");
        }
    }
};

namespace detail {
// Largest |log f*| we accept before calling the proposal divergent. Keeps
// f*^2 inside double range so the moment-matching algebra stays finite.
inline constexpr double kMaxLogMean = 350.0;
}  // namespace detail

// log f*(exp(d_prev)); the samplers work on log-states, so the mean map is
// exposed in that coordinate as well.
inline double log_process_mean_d(ModelKind kind, double d_prev, const ModelParams& p) {
    require_domain(std::isfinite(d_prev), "process_mean: log-state must be finite");
    double lm;
    if (is_gompertz_map(kind)) {
        lm = p.a + (p.b + 1.0) * d_prev;
    } else {
        if (!(std::fabs(d_prev) <= detail::kMaxLogMean))
            throw numeric_error("process_mean: Moran-Ricker state exp(" +
                                std::to_string(d_prev) + ") out of range");
        lm = d_prev + p.a + p.b * std::exp(d_prev);
    }
    if (!(std::fabs(lm) <= detail::kMaxLogMean))
        throw numeric_error("process_mean: exp(" + std::to_string(lm) +
                            ") overflows for " + to_string(kind));
    return lm;
}

inline double log_process_mean(ModelKind kind, double x_prev, const ModelParams& p) {
    require_domain(x_prev > 0.0 && std::isfinite(x_prev),
                   "process_mean: x_prev must be positive and finite");
    return log_process_mean_d(kind, std::log(x_prev), p);
}

inline double process_mean(ModelKind kind, double x_prev, const ModelParams& p) {
    return std::exp(log_process_mean(kind, x_prev, p));
}

namespace detail {
// Conditional law given the log of the mean map value; shared by steps and
// observations since the observation map is the identity for all six models.
inline LogNormalParams conditional_law(ModelKind kind, double log_f, double prec) {
    if (is_biased(kind)) return LogNormalParams(log_f, prec);
    if (is_constant_variance(kind))
        return mm_transform(MomentPair(std::exp(log_f), 1.0 / prec));
    // Density dependent: variance f*^2/prec, so the log-variance collapses
    // to log1p(1/prec) independently of f*.
    const double log_var = std::log1p(1.0 / prec);
    return LogNormalParams(log_f - 0.5 * log_var, 1.0 / log_var);
}
}  // namespace detail

// Law of X_t | X_{t-1}. In log coordinates the same parameters describe the
// normal law of D_t = log X_t given D_{t-1}.
inline LogNormalParams step_law(ModelKind kind, double x_prev, const ModelParams& p) {
    return detail::conditional_law(kind, log_process_mean(kind, x_prev, p), p.proc_prec);
}

inline LogNormalParams step_law_d(ModelKind kind, double d_prev, const ModelParams& p) {
    return detail::conditional_law(kind, log_process_mean_d(kind, d_prev, p), p.proc_prec);
}

// Law of Y_t | X_t (g*(x) = x for all six benchmark models).
inline LogNormalParams obs_law(ModelKind kind, double x, const ModelParams& p) {
    require_domain(x > 0.0 && std::isfinite(x), "obs_law: x must be positive");
    return detail::conditional_law(kind, std::log(x), p.obs_prec);
}

inline LogNormalParams obs_law_d(ModelKind kind, double d_state, const ModelParams& p) {
    require_domain(std::isfinite(d_state), "obs_law: log-state must be finite");
    require_domain(std::fabs(d_state) <= detail::kMaxLogMean,
                   "obs_law: log-state out of range");
    return detail::conditional_law(kind, d_state, p.obs_prec);
}

inline double step(ModelKind kind, double x_prev, const ModelParams& p, RandomStream& rng) {
    return lognormal_sample(step_law(kind, x_prev, p), rng);
}

inline double observe(ModelKind kind, double x, const ModelParams& p, RandomStream& rng) {
    return lognormal_sample(obs_law(kind, x, p), rng);
}

struct SimulatedSeries {
    Trajectory trajectory;
    ObservationSeries observations;
};

inline SimulatedSeries simulate(ModelKind kind, const ModelParams& p, double x0,
                                int n_steps, const std::vector<int>& obs_indices,
                                RandomStream& rng) {
    p.validate();
    require_domain(n_steps >= 1, "simulate: T must be >= 1");
    require_domain(x0 > 0.0 && std::isfinite(x0), "simulate: x0 must be positive");

    SimulatedSeries out;
    out.trajectory.t0_value = x0;
    out.trajectory.values.reserve(static_cast<std::size_t>(n_steps));

    std::size_t next_obs = 0;
    double x = x0;
    for (int t = 1; t <= n_steps; ++t) {
        x = step(kind, x, p, rng);
        out.trajectory.values.push_back(x);
        if (next_obs < obs_indices.size() && obs_indices[next_obs] == t) {
            out.observations.indices.push_back(t);
            out.observations.values.push_back(observe(kind, x, p, rng));
            ++next_obs;
        }
    }
    require_domain(next_obs == obs_indices.size(),
                   "simulate: obs_indices must be increasing and within 1..T");
    return out;
}

inline std::vector<int> every_step_indices(int n_steps) {
    std::vector<int> idx(static_cast<std::size_t>(n_steps));
    for (int t = 1; t <= n_steps; ++t) idx[static_cast<std::size_t>(t - 1)] = t;
    return idx;
}

// Joint log density of (X_{1:T}, Y_I) given X_0 and parameters, on the
// natural scale so values are comparable across all six models.
inline double loglik_joint(ModelKind kind, const Trajectory& traj,
                           const ObservationSeries& obs, const ModelParams& p) {
    p.validate();
    obs.validate(traj.length());
    double total = 0.0;
    double x_prev = traj.t0_value;
    for (int t = 1; t <= traj.length(); ++t) {
        const double x = traj.at(t);
        const double term = lognormal_logpdf(x, step_law(kind, x_prev, p));
        if (!std::isfinite(term))
            throw numeric_error("loglik_joint: non-finite process density at t=" +
                                std::to_string(t));
        total += term;
        x_prev = x;
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double x = traj.at(obs.indices[i]);
        const double term = lognormal_logpdf(obs.values[i], obs_law(kind, x, p));
        if (!std::isfinite(term))
            throw numeric_error("loglik_joint: non-finite observation density at t=" +
                                std::to_string(obs.indices[i]));
        total += term;
    }
    return total;
}

// Fixed point of the deterministic mean map f*(x) = x; used to seed
// synthetic series in a dynamically typical regime.
inline double mean_map_fixed_point(ModelKind kind, const ModelParams& p) {
    require_domain(p.b != 0.0, "mean_map_fixed_point: b must be nonzero");
    return is_gompertz_map(kind) ? std::exp(-p.a / p.b) : -p.a / p.b;
}

}  // namespace lnssm
