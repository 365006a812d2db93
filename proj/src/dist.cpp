#include "pathlaw/dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "pathlaw/error.hpp"

namespace pathlaw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Report numerical failure as NaN instead of throwing; callers (the fitter in
// particular) treat NaN as an infeasible point.
using quiet_policy = boost::math::policies::policy<
    boost::math::policies::domain_error<boost::math::policies::errno_on_error>,
    boost::math::policies::pole_error<boost::math::policies::errno_on_error>,
    boost::math::policies::overflow_error<boost::math::policies::errno_on_error>,
    boost::math::policies::evaluation_error<boost::math::policies::errno_on_error>>;

constexpr double inf = std::numeric_limits<double>::infinity();

double lower_regularized(double a, double x) {
    return boost::math::gamma_p(a, x, quiet_policy());
}
double upper_regularized(double a, double x) {
    return boost::math::gamma_q(a, x, quiet_policy());
}

bool positive(double x) {
    return x > 0.0 && std::isfinite(x);
}

void check_t(double t) {
    if (!(t >= 0.0))
        throw DomainError("density argument must be >= 0");
}

// Log density at t = 0 for t^(shape-1) laws; `at_one` is the log density
// when shape == 1.
double log_at_zero(double shape, double at_one) {
    if (shape < 1.0)
        return inf;
    if (shape > 1.0)
        return -inf;
    return at_one;
}

} // namespace

Family family_of(const ModelParams& p) noexcept {
    return static_cast<Family>(p.index());
}

std::string_view family_name(Family f) noexcept {
    switch (f) {
    case Family::gamma:
        return "gamma";
    case Family::weibull:
        return "weibull";
    case Family::lognormal:
        return "lognormal";
    case Family::gengamma:
        return "gengamma";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (Family f : all_families)
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

std::size_t parameter_count(Family f) noexcept {
    return f == Family::gengamma ? 3 : 2;
}

void validate(const ModelParams& p) {
    const bool ok = std::visit(overloaded{
                                   [](const GammaParams& g) { return positive(g.theta) && positive(g.eta); },
                                   [](const WeibullParams& w) { return positive(w.lambda) && positive(w.kappa); },
                                   [](const LogNormalParams& l) { return std::isfinite(l.mu) && positive(l.xi); },
                                   [](const GenGammaParams& g) {
                                       return positive(g.sigma) && positive(g.alpha) && positive(g.beta);
                                   },
                               },
                               p);
    if (!ok)
        throw ParameterError(std::string(family_name(family_of(p))) + ": parameters out of range");
}

double log_pdf(const ModelParams& p, double t) {
    check_t(t);
    return std::visit(
        overloaded{
            [t](const GammaParams& g) {
                const double norm = -g.eta * std::log(g.theta) - std::lgamma(g.eta);
                if (t == 0.0)
                    return log_at_zero(g.eta, norm);
                return norm + (g.eta - 1.0) * std::log(t) - t / g.theta;
            },
            [t](const WeibullParams& w) {
                const double norm = std::log(w.kappa) - w.kappa * std::log(w.lambda);
                if (t == 0.0)
                    return log_at_zero(w.kappa, norm);
                return norm + (w.kappa - 1.0) * std::log(t) - std::pow(t / w.lambda, w.kappa);
            },
            [t](const LogNormalParams& l) {
                if (t == 0.0)
                    return -inf;
                const double z = (std::log(t) - l.mu) / l.xi;
                return -0.5 * z * z - std::log(std::sqrt(2.0 * std::numbers::pi) * l.xi * t);
            },
            [t](const GenGammaParams& g) {
                const double norm = std::log(g.beta) - g.alpha * std::log(g.sigma) - std::lgamma(g.alpha / g.beta);
                if (t == 0.0)
                    return log_at_zero(g.alpha, norm);
                return norm + (g.alpha - 1.0) * std::log(t) - std::pow(t / g.sigma, g.beta);
            },
        },
        p);
}

double pdf(const ModelParams& p, double t) {
    return std::exp(log_pdf(p, t));
}

double cdf(const ModelParams& p, double t) {
    check_t(t);
    if (t == 0.0)
        return 0.0;
    if (t == inf)
        return 1.0;
    return std::visit(overloaded{
                          [t](const GammaParams& g) { return lower_regularized(g.eta, t / g.theta); },
                          [t](const WeibullParams& w) { return -std::expm1(-std::pow(t / w.lambda, w.kappa)); },
                          [t](const LogNormalParams& l) {
                              const double z = (std::log(t) - l.mu) / l.xi;
                              return 0.5 * std::erfc(-z / std::numbers::sqrt2);
                          },
                          [t](const GenGammaParams& g) {
                              return lower_regularized(g.alpha / g.beta, std::pow(t / g.sigma, g.beta));
                          },
                      },
                      p);
}

double survival(const ModelParams& p, double t) {
    check_t(t);
    if (t == 0.0)
        return 1.0;
    if (t == inf)
        return 0.0;
    return std::visit(overloaded{
                          [t](const GammaParams& g) { return upper_regularized(g.eta, t / g.theta); },
                          [t](const WeibullParams& w) { return std::exp(-std::pow(t / w.lambda, w.kappa)); },
                          [t](const LogNormalParams& l) {
                              const double z = (std::log(t) - l.mu) / l.xi;
                              return 0.5 * std::erfc(z / std::numbers::sqrt2);
                          },
                          [t](const GenGammaParams& g) {
                              return upper_regularized(g.alpha / g.beta, std::pow(t / g.sigma, g.beta));
                          },
                      },
                      p);
}

double mean(const ModelParams& p) {
    return std::visit(overloaded{
                          [](const GammaParams& g) { return g.eta * g.theta; },
                          [](const WeibullParams& w) { return w.lambda * std::exp(std::lgamma(1.0 + 1.0 / w.kappa)); },
                          // exp(mu + xi^2/2); the sign of the xi^2 term follows from the density.
                          [](const LogNormalParams& l) { return std::exp(l.mu + 0.5 * l.xi * l.xi); },
                          [](const GenGammaParams& g) {
                              return g.sigma *
                                     std::exp(std::lgamma((g.alpha + 1.0) / g.beta) - std::lgamma(g.alpha / g.beta));
                          },
                      },
                      p);
}

DiscretizedModel discretize(const ModelParams& p, std::int64_t K) {
    if (K < 0)
        throw ParameterError("discretize: K must be >= 0");
    DiscretizedModel out{std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0), static_cast<std::size_t>(K), p};
    auto& f = out.masses;
    if (K == 0) {
        f[0] = 1.0;
        return out;
    }

    // Boundaries b_j = j + 1/2 for j = 0..K-1. Differences are taken on the
    // CDF below the median and on the survival function above it.
    double prev_cdf = cdf(p, 0.5);
    double prev_sf = prev_cdf < 0.5 ? 1.0 - prev_cdf : survival(p, 0.5);
    f[0] = prev_cdf;
    for (std::int64_t t = 1; t < K; ++t) {
        const double b = static_cast<double>(t) + 0.5;
        const double c = cdf(p, b);
        const double s = c < 0.5 ? 1.0 - c : survival(p, b);
        const double mass = prev_cdf < 0.5 ? c - prev_cdf : prev_sf - s;
        f[static_cast<std::size_t>(t)] = mass > 0.0 ? mass : 0.0;
        prev_cdf = c;
        prev_sf = s;
    }
    f[static_cast<std::size_t>(K)] = prev_sf;
    return out;
}

std::optional<ModelParams> reduce_gg(const GenGammaParams& p, double rel_tol) {
    validate(p);
    const auto close = [rel_tol](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
    };
    if (close(p.beta, 1.0))
        return GammaParams{p.sigma, p.alpha};
    if (close(p.alpha, p.beta))
        return WeibullParams{p.sigma, p.beta};
    return std::nullopt;
}

GenGammaParams transform_linear(const GenGammaParams& p, double c) {
    if (!positive(c))
        throw ParameterError("transform_linear: c must be > 0");
    return {c * p.sigma, p.alpha, p.beta};
}

GenGammaParams transform_power(const GenGammaParams& p, double c) {
    if (!positive(c))
        throw ParameterError("transform_power: c must be > 0");
    return {std::pow(p.sigma, c), p.alpha / c, p.beta / c};
}

double sample_gengamma(const GenGammaParams& p, Rng& rng) {
    // (t/sigma)^beta ~ Gamma(alpha/beta, 1)
    const double x = boost::math::gamma_p_inv(p.alpha / p.beta, rng.uniform_open());
    return p.sigma * std::pow(x, 1.0 / p.beta);
}

} // namespace pathlaw
