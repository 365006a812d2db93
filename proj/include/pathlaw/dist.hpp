#pragma once

// Continuous models of path-length and outbreak histograms.
//
//   Gamma       f(t) = t^(eta-1) e^(-t/theta) / (theta^eta Gamma(eta))
//   Weibull     f(t) = (kappa/lambda^kappa) t^(kappa-1) e^(-(t/lambda)^kappa)
//   LogNormal   f(t) = exp(-(log t - mu)^2 / (2 xi^2)) / (sqrt(2 pi) xi t)
//   GenGamma    f(t) = (beta/sigma^alpha) t^(alpha-1) e^(-(t/sigma)^beta) / Gamma(alpha/beta)
//
// GenGamma contains Gamma (beta = 1) and Weibull (alpha = beta); LogNormal is
// only reached in the limit alpha/beta -> infinity.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pathlaw/rng.hpp"

namespace pathlaw {

struct GammaParams {
    double theta; // scale
    double eta;   // shape
    friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

struct WeibullParams {
    double lambda; // scale
    double kappa;  // shape
    friend bool operator==(const WeibullParams&, const WeibullParams&) = default;
};

struct LogNormalParams {
    double mu; // log-location, any real
    double xi; // log-scale
    friend bool operator==(const LogNormalParams&, const LogNormalParams&) = default;
};

struct GenGammaParams {
    double sigma; // scale
    double alpha; // shape
    double beta;  // shape
    friend bool operator==(const GenGammaParams&, const GenGammaParams&) = default;
};

using ModelParams = std::variant<GammaParams, WeibullParams, LogNormalParams, GenGammaParams>;

enum class Family { gamma, weibull, lognormal, gengamma };

inline constexpr Family all_families[] = {Family::gamma, Family::weibull, Family::lognormal,
                                          Family::gengamma};

Family family_of(const ModelParams& p) noexcept;
std::string_view family_name(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
std::size_t parameter_count(Family f) noexcept;

// Throws ParameterError when a positivity constraint is violated.
void validate(const ModelParams& p);

// Density at t >= 0 (DomainError for t < 0). At t = 0 a shape below one gives
// +infinity, an integrable singularity; LogNormal gives its limit 0.
double pdf(const ModelParams& p, double t);
double log_pdf(const ModelParams& p, double t);

double cdf(const ModelParams& p, double t);
// 1 - cdf, computed without cancellation in the upper tail.
double survival(const ModelParams& p, double t);

double mean(const ModelParams& p);

// Per-integer-bin masses f[0..K] from CDF differences at half-integers:
//   f[0] = F(1/2), f[t] = F(t+1/2) - F(t-1/2), f[K] = 1 - F(K-1/2).
// The last bin takes the whole upper tail so the masses telescope to one.
struct DiscretizedModel {
    std::vector<double> masses;
    std::size_t K = 0;
    ModelParams params;
};

DiscretizedModel discretize(const ModelParams& p, std::int64_t K);

// Recognise a generalized Gamma that is exactly a Gamma (beta = 1) or Weibull
// (alpha = beta) up to a relative tolerance. When both hold (the exponential)
// the Gamma form is returned.
inline constexpr double reduction_tolerance = 1e-9;
std::optional<ModelParams> reduce_gg(const GenGammaParams& p, double rel_tol = reduction_tolerance);

// Law of tau = c t when t ~ GG(sigma, alpha, beta): GG(c sigma, alpha, beta).
GenGammaParams transform_linear(const GenGammaParams& p, double c);
// Law of tau = t^c: GG(sigma^c, alpha/c, beta/c).
GenGammaParams transform_power(const GenGammaParams& p, double c);

// Inverse-CDF draw, used to build test fixtures.
double sample_gengamma(const GenGammaParams& p, Rng& rng);

// ---------------------------------------------------------------------------
// Discrete maximum-entropy pmf on the grid t_k = dt * k, k = 0..k_grid:
//
//   p_k = t_k^(alpha-1) e^(-rate t_k^beta) / sum_j t_j^(alpha-1) e^(-rate t_j^beta)
//
// The rate is the Lagrange multiplier of the moment constraint
// sum_k p_k t_k^beta = c; for small dt it approaches alpha / (beta c), and the
// pmf divided by dt approaches the GenGamma density with
// sigma = (beta c / alpha)^(1/beta).
//
// Grid point t_0 = 0: weight 0 for alpha > 1, 1 for alpha = 1, and excluded
// (mass 0) for alpha < 1 where the weight diverges.

struct MaxEntSpec {
    double dt = 0.0;
    std::size_t k_grid = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double rate = 0.0;

    // rate = alpha / (beta c)
    static MaxEntSpec from_moment(double dt, std::size_t k_grid, double alpha, double beta, double c);
};

struct MaxEntGrid {
    MaxEntSpec spec;
    std::vector<double> t;
    std::vector<double> masses;
};

MaxEntGrid maxent_pmf(const MaxEntSpec& spec);

// Scale of the GenGamma density the maxent pmf tends to for moment c.
double maxent_sigma(double alpha, double beta, double c);

} // namespace pathlaw
