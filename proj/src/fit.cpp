#include "pathlaw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pathlaw/error.hpp"
#include "pathlaw/kernels.hpp"
#include "pathlaw/optimize.hpp"

namespace pathlaw {

double hellinger(std::span<const double> h, std::span<const double> f) {
    if (h.size() != f.size())
        throw ParameterError("hellinger: histogram and model cover different ranges");
    double total = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] >= 0.0) || !(f[i] >= 0.0))
            throw DomainError("hellinger: negative or non-finite mass");
        total += h[i];
    }
    if (!(total > 0.0))
        throw DomainError("hellinger: empty histogram");
    std::vector<double> normalized(h.begin(), h.end());
    for (auto& x : normalized)
        x /= total;
    return 0.5 * std::sqrt(kernels::sqrt_diff_sq_sum(normalized, f));
}

namespace {

// log f is floored here so empty model bins stay finite.
constexpr double mass_floor = 1e-300;
// Box on unconstrained coordinates; beyond it the special functions lose meaning.
constexpr double coordinate_bound = 25.0;
constexpr double inf = std::numeric_limits<double>::infinity();

struct Prepared {
    std::vector<double> counts; // t = 0..K
    std::vector<double> props;
    std::size_t K = 0;
    std::size_t nonzero = 0;
};

Prepared prepare(std::span<const double> counts) {
    Prepared p;
    std::size_t last = 0;
    bool any = false;
    double total = 0.0;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (!(counts[t] >= 0.0) || !std::isfinite(counts[t]))
            throw DomainError("fit: counts must be finite and nonnegative");
        if (counts[t] > 0.0) {
            last = t;
            any = true;
            ++p.nonzero;
            total += counts[t];
        }
    }
    if (!any)
        throw UnderdeterminedError("fit: histogram is empty");
    p.K = last;
    p.counts.assign(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    p.props.resize(p.counts.size());
    for (std::size_t t = 0; t < p.counts.size(); ++t)
        p.props[t] = p.counts[t] / total;
    return p;
}

std::vector<double> floored_logs(const DiscretizedModel& m) {
    std::vector<double> logs(m.masses.size());
    for (std::size_t t = 0; t < logs.size(); ++t) {
        const double f = m.masses[t];
        logs[t] = std::log(f > mass_floor ? f : mass_floor);
    }
    return logs;
}

std::optional<ModelParams> decode(Family family, const std::vector<double>& x) {
    for (double v : x)
        if (!(std::abs(v) <= coordinate_bound))
            return std::nullopt;
    switch (family) {
    case Family::gamma:
        return GammaParams{std::exp(x[0]), std::exp(x[1])};
    case Family::weibull:
        return WeibullParams{std::exp(x[0]), std::exp(x[1])};
    case Family::lognormal:
        return LogNormalParams{x[0], std::exp(x[1])};
    case Family::gengamma:
        return GenGammaParams{std::exp(x[0]), std::exp(x[1]), std::exp(x[2])};
    }
    return std::nullopt;
}

std::vector<double> encode(const ModelParams& p) {
    return std::visit(
        [](const auto& q) -> std::vector<double> {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, GammaParams>)
                return {std::log(q.theta), std::log(q.eta)};
            else if constexpr (std::is_same_v<T, WeibullParams>)
                return {std::log(q.lambda), std::log(q.kappa)};
            else if constexpr (std::is_same_v<T, LogNormalParams>)
                return {q.mu, std::log(q.xi)};
            else
                return {std::log(q.sigma), std::log(q.alpha), std::log(q.beta)};
        },
        p);
}

// Negative mean log-likelihood per observation.
double objective(const Prepared& data, const ModelParams& params) {
    const auto model = discretize(params, static_cast<std::int64_t>(data.K));
    for (double f : model.masses)
        if (!std::isfinite(f))
            return inf;
    const auto logs = floored_logs(model);
    return -kernels::dot(data.props, logs);
}

NelderMeadOptions optimizer_options(const FitOptions& opts) {
    NelderMeadOptions nm;
    nm.value_tol = opts.value_tol;
    nm.x_tol = opts.x_tol;
    nm.max_iterations = opts.max_iterations;
    return nm;
}

struct Moments {
    double mean;
    double variance;
};

Moments moments(const Prepared& data, double power) {
    double m = 0.0;
    for (std::size_t t = 0; t <= data.K; ++t)
        m += data.props[t] * std::pow(static_cast<double>(t), power);
    double v = 0.0;
    for (std::size_t t = 0; t <= data.K; ++t) {
        const double d = std::pow(static_cast<double>(t), power) - m;
        v += data.props[t] * d * d;
    }
    return {m, v};
}

// Gamma by moment matching: eta = m^2/v, theta = v/m. The 1/12 term is the
// variance of rounding to integer bins.
ModelParams init_gamma(const Prepared& data) {
    const auto [m, v] = moments(data, 1.0);
    const double mean = std::max(m, 0.5);
    const double var = std::max(v, 0.0) + 1.0 / 12.0;
    return GammaParams{var / mean, mean * mean / var};
}

// Weibull by least squares of log(-log(1 - F)) on log t at bin edges.
ModelParams init_weibull(const Prepared& data) {
    double cumulative = 0.0;
    std::vector<double> xs, ys;
    for (std::size_t t = 0; t < data.K; ++t) {
        cumulative += data.props[t];
        if (cumulative <= 0.0 || cumulative >= 1.0)
            continue;
        xs.push_back(std::log(static_cast<double>(t) + 0.5));
        ys.push_back(std::log(-std::log1p(-cumulative)));
    }
    if (xs.size() >= 2) {
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        if (sxx > 0.0 && sxy > 0.0) {
            const double kappa = sxy / sxx;
            const double intercept = my - kappa * mx;
            return WeibullParams{std::exp(-intercept / kappa), kappa};
        }
    }
    const auto [m, v] = moments(data, 1.0);
    return WeibullParams{std::max(m, 0.5), 2.0};
}

// LogNormal from sample log-moments; t = 0 is read as t = 1/2.
ModelParams init_lognormal(const Prepared& data) {
    double m = 0.0;
    for (std::size_t t = 0; t <= data.K; ++t)
        m += data.props[t] * std::log(std::max(static_cast<double>(t), 0.5));
    double v = 0.0;
    for (std::size_t t = 0; t <= data.K; ++t) {
        const double d = std::log(std::max(static_cast<double>(t), 0.5)) - m;
        v += data.props[t] * d * d;
    }
    return LogNormalParams{m, std::max(std::sqrt(v), 0.1)};
}

// For fixed beta, (t/sigma)^beta ~ Gamma(alpha/beta, 1); match moments of t^beta.
GenGammaParams init_gengamma_at(const Prepared& data, double beta) {
    const auto [m, v] = moments(data, beta);
    const double mean = std::max(m, 1e-3);
    const double var = std::max(v, 1e-3 * mean * mean);
    const double shape = mean * mean / var;
    return {std::pow(var / mean, 1.0 / beta), shape * beta, beta};
}

struct Candidate {
    ModelParams params;
    double value;
    std::size_t iterations;
    bool converged;
};

Candidate minimise(const Prepared& data, Family family, const ModelParams& start, const NelderMeadOptions& nm) {
    const auto f = [&](const std::vector<double>& x) {
        const auto p = decode(family, x);
        return p ? objective(data, *p) : inf;
    };
    const auto r = nelder_mead(f, encode(start), nm);
    return {*decode(family, r.x), r.value, r.iterations, r.converged};
}

// Best of the candidates; ties go to the earlier one.
const Candidate& best_of(const std::vector<Candidate>& c) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].value < c[b].value)
            b = i;
    return c[b];
}

Candidate fit_two_parameter(const Prepared& data, Family family, const NelderMeadOptions& nm) {
    ModelParams start = family == Family::gamma     ? init_gamma(data)
                        : family == Family::weibull ? init_weibull(data)
                                                    : init_lognormal(data);
    return minimise(data, family, start, nm);
}

Candidate fit_gengamma(const Prepared& data, const NelderMeadOptions& nm, const std::vector<ModelParams>& extra_starts) {
    // Coarse profile over beta, then full refinement from the best profile
    // point and from the nested Gamma / Weibull optima.
    static constexpr double beta_grid[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    std::vector<Candidate> profile;
    for (double beta : beta_grid) {
        const auto start = init_gengamma_at(data, beta);
        const auto f = [&](const std::vector<double>& x) {
            if (!(std::abs(x[0]) <= coordinate_bound) || !(std::abs(x[1]) <= coordinate_bound))
                return inf;
            return objective(data, GenGammaParams{std::exp(x[0]), std::exp(x[1]), beta});
        };
        NelderMeadOptions coarse = nm;
        coarse.max_restarts = 1;
        const auto r = nelder_mead(f, {std::log(start.sigma), std::log(start.alpha)}, coarse);
        profile.push_back({GenGammaParams{std::exp(r.x[0]), std::exp(r.x[1]), beta}, r.value, r.iterations, r.converged});
    }

    std::vector<Candidate> refined;
    refined.push_back(minimise(data, Family::gengamma, best_of(profile).params, nm));
    for (const auto& start : extra_starts)
        refined.push_back(minimise(data, Family::gengamma, start, nm));
    return best_of(refined);
}

GenGammaParams as_gengamma(const ModelParams& p) {
    if (const auto* g = std::get_if<GammaParams>(&p))
        return {g->theta, g->eta, 1.0};
    if (const auto* w = std::get_if<WeibullParams>(&p))
        return {w->lambda, w->kappa, w->kappa};
    throw ParameterError("only Gamma and Weibull embed in GenGamma");
}

FitResult finish(const Prepared& data, Family family, const Candidate& c) {
    FitResult r;
    r.family = family;
    r.params = c.params;
    r.iterations = c.iterations;
    r.converged = c.converged;
    r.K = data.K;
    const auto model = discretize(c.params, static_cast<std::int64_t>(data.K));
    r.log_likelihood = kernels::dot(data.counts, floored_logs(model));
    r.hellinger = hellinger(data.counts, model.masses);
    return r;
}

void require_identifiable(const Prepared& data, Family family) {
    const std::size_t needed = parameter_count(family) + 1;
    if (data.nonzero < needed)
        throw UnderdeterminedError(std::string(family_name(family)) + " fit needs at least " +
                                   std::to_string(needed) + " nonempty bins, got " + std::to_string(data.nonzero));
}

FitResult fit_prepared(const Prepared& data, Family family, const FitOptions& opts,
                       const std::vector<ModelParams>& nested_optima) {
    require_identifiable(data, family);
    const auto nm = optimizer_options(opts);
    if (family != Family::gengamma)
        return finish(data, family, fit_two_parameter(data, family, nm));

    std::vector<ModelParams> starts;
    for (const auto& p : nested_optima)
        starts.push_back(as_gengamma(p));
    return finish(data, family, fit_gengamma(data, nm, starts));
}

std::vector<ModelParams> nested_starts(const Prepared& data, const FitOptions& opts) {
    std::vector<ModelParams> starts;
    const auto nm = optimizer_options(opts);
    if (data.nonzero >= parameter_count(Family::gamma) + 1) {
        starts.push_back(fit_two_parameter(data, Family::gamma, nm).params);
        starts.push_back(fit_two_parameter(data, Family::weibull, nm).params);
    }
    return starts;
}

} // namespace

double log_likelihood(std::span<const double> counts, const ModelParams& p) {
    const auto data = prepare(counts);
    return kernels::dot(data.counts, floored_logs(discretize(p, static_cast<std::int64_t>(data.K))));
}

FitResult fit(std::span<const double> counts, Family family, const FitOptions& opts) {
    const auto data = prepare(counts);
    require_identifiable(data, family);
    std::vector<ModelParams> nested;
    if (family == Family::gengamma)
        nested = nested_starts(data, opts);
    return fit_prepared(data, family, opts, nested);
}

FitResult fit(const DistanceHistogram& h, Family family, const FitOptions& opts) {
    const auto counts = to_counts(h);
    return fit(counts, family, opts);
}

FitResult fit(const OutbreakTrace& trace, Family family, const FitOptions& opts) {
    const auto counts = to_counts(trace);
    return fit(counts, family, opts);
}

const FitResult* FitAllResult::get(Family f) const {
    for (const auto& o : outcomes)
        if (o.family == f && o.result)
            return &*o.result;
    return nullptr;
}

FitAllResult fit_all(std::span<const double> counts, const FitOptions& opts) {
    FitAllResult all;
    std::optional<Prepared> data;
    std::string prepare_error;
    try {
        data = prepare(counts);
    } catch (const std::exception& e) {
        prepare_error = e.what();
    }

    std::vector<ModelParams> nested;
    for (Family family : all_families) {
        FamilyOutcome outcome{family, std::nullopt, prepare_error};
        if (data) {
            try {
                outcome.result = fit_prepared(*data, family, opts, nested);
                if (family == Family::gamma || family == Family::weibull)
                    nested.push_back(outcome.result->params);
            } catch (const std::exception& e) {
                outcome.error = e.what();
            }
        }
        all.outcomes.push_back(std::move(outcome));
    }

    // Lowest Hellinger; ties to fewer parameters, then family order.
    const FitResult* best = nullptr;
    for (const auto& o : all.outcomes) {
        if (!o.result)
            continue;
        const auto& r = *o.result;
        if (!best || r.hellinger < best->hellinger ||
            (r.hellinger == best->hellinger && parameter_count(r.family) < parameter_count(best->family)))
            best = &r;
    }
    if (best)
        all.best = best->family;
    return all;
}

MeanPrediction predict_mean(const FitResult& r) {
    return {mean(r.params), !r.converged};
}

std::vector<EmbeddingPoint> embed(std::span<const NamedFit> fits) {
    std::vector<EmbeddingPoint> points;
    points.reserve(fits.size());
    for (const auto& [name, r] : fits) {
        const auto* g = std::get_if<GenGammaParams>(&r.params);
        if (r.family != Family::gengamma || !g)
            throw ParameterError("embed: '" + name + "' is not a GenGamma fit");
        points.push_back({name, g->sigma, g->alpha, g->beta, r.hellinger});
    }
    return points;
}

std::vector<double> to_counts(const DistanceHistogram& h) {
    return {h.counts().begin(), h.counts().end()};
}

std::vector<double> to_counts(const OutbreakTrace& trace) {
    return {trace.newly_infected.begin(), trace.newly_infected.end()};
}

} // namespace pathlaw
