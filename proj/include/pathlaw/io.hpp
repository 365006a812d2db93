#pragma once

// File formats shared by the CLI and tests.
//
//   histogram CSV   distance,count            rows sorted by distance
//   trace CSV       t,newly_infected
//   ensemble CSV    replicate,t,newly_infected  replicate blocks, then "mean"
//   embedding CSV   name,sigma,alpha,beta,hellinger
//   ModelParams     {"family": "gengamma", "sigma": .., "alpha": .., "beta": ..}
//                   (theta/eta, lambda/kappa, mu/xi for the other families)
//   FitResult       {"family", "params", "log_likelihood", "hellinger",
//                    "converged", "iterations", "K"}

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathlaw/epidemics.hpp"
#include "pathlaw/fit.hpp"
#include "pathlaw/paths.hpp"

namespace pathlaw::io {

using nlohmann::json;

// Shortest decimal that round-trips.
std::string format_double(double x);

json to_json(const ModelParams& p);
ModelParams model_params_from_json(const json& j);

json to_json(const FitResult& r);
FitResult fit_result_from_json(const json& j);

// Writes k = 1..max (k = 0 too when its count is nonzero).
void write_histogram_csv(std::ostream& out, const DistanceHistogram& h);
void write_trace_csv(std::ostream& out, const OutbreakTrace& trace);
void write_ensemble_csv(std::ostream& out, std::span<const OutbreakTrace> traces, std::span<const double> average);
void write_embedding_csv(std::ostream& out, std::span<const EmbeddingPoint> points);

// Reads a histogram, trace, or ensemble CSV into counts indexed by the first
// numeric column. For ensembles the "mean" block is returned.
std::vector<double> read_counts_csv(std::istream& in);

} // namespace pathlaw::io
