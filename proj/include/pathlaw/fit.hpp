#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathlaw/dist.hpp"
#include "pathlaw/epidemics.hpp"
#include "pathlaw/paths.hpp"

namespace pathlaw {

// H = 1/2 sqrt(sum_t (sqrt(h[t]) - sqrt(f[t]))^2) with h rescaled to sum one.
// Lies in [0, 1/sqrt(2)] for normalized inputs.
double hellinger(std::span<const double> h, std::span<const double> f);

struct FitResult {
    Family family = Family::gengamma;
    ModelParams params = GenGammaParams{1.0, 1.0, 1.0};
    // sum_t h[t] log f[t] over the raw counts.
    double log_likelihood = 0.0;
    double hellinger = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t K = 0;
};

struct FitOptions {
    double value_tol = 1e-10;
    double x_tol = 1e-8;
    std::size_t max_iterations = 10000;
};

// Multinomial maximum likelihood over bins t = 0..K, K being the last
// nonzero bin, with the model discretized to the same K. Throws
// UnderdeterminedError when fewer than 3 (two-parameter families) or 4
// (GenGamma) bins are nonzero.
FitResult fit(std::span<const double> counts, Family family, const FitOptions& opts = {});
FitResult fit(const DistanceHistogram& h, Family family, const FitOptions& opts = {});
FitResult fit(const OutbreakTrace& trace, Family family, const FitOptions& opts = {});

// Multinomial log-likelihood sum_t counts[t] log f[t] of `p` discretized to
// the counts' support.
double log_likelihood(std::span<const double> counts, const ModelParams& p);

struct FamilyOutcome {
    Family family;
    std::optional<FitResult> result;
    std::string error;
};

struct FitAllResult {
    std::vector<FamilyOutcome> outcomes; // gamma, weibull, lognormal, gengamma
    std::optional<Family> best;          // lowest Hellinger, ties to fewer parameters

    const FitResult* get(Family f) const;
};

// Fits every family; a failing family is recorded, not rethrown.
FitAllResult fit_all(std::span<const double> counts, const FitOptions& opts = {});

struct MeanPrediction {
    double value;
    bool flagged; // fit did not converge
};

MeanPrediction predict_mean(const FitResult& r);

struct EmbeddingPoint {
    std::string name;
    double sigma;
    double alpha;
    double beta;
    double hellinger;
};

struct NamedFit {
    std::string name;
    FitResult fit;
};

// One (sigma, alpha, beta) point per GenGamma fit, in input order.
std::vector<EmbeddingPoint> embed(std::span<const NamedFit> fits);

// Histogram counts as reals, index = distance.
std::vector<double> to_counts(const DistanceHistogram& h);
std::vector<double> to_counts(const OutbreakTrace& trace);

} // namespace pathlaw
