#include <algorithm>
#include <cmath>
#include <limits>

#include "pathlaw/dist.hpp"
#include "pathlaw/error.hpp"

namespace pathlaw {

MaxEntSpec MaxEntSpec::from_moment(double dt, std::size_t k_grid, double alpha, double beta, double c) {
    if (!(c > 0.0))
        throw ParameterError("maxent: moment c must be > 0");
    return {dt, k_grid, alpha, beta, alpha / (beta * c)};
}

double maxent_sigma(double alpha, double beta, double c) {
    return std::pow(beta * c / alpha, 1.0 / beta);
}

MaxEntGrid maxent_pmf(const MaxEntSpec& spec) {
    if (!(spec.dt > 0.0) || spec.k_grid < 1 || !(spec.alpha > 0.0) || !(spec.beta > 0.0) || !(spec.rate > 0.0))
        throw ParameterError("maxent: requires dt, alpha, beta, rate > 0 and k_grid >= 1");

    MaxEntGrid grid{spec, std::vector<double>(spec.k_grid + 1), std::vector<double>(spec.k_grid + 1, 0.0)};
    constexpr double excluded = -std::numeric_limits<double>::infinity();
    std::vector<double> log_w(spec.k_grid + 1);
    for (std::size_t k = 0; k <= spec.k_grid; ++k) {
        const double t = spec.dt * static_cast<double>(k);
        grid.t[k] = t;
        if (k == 0) {
            log_w[k] = spec.alpha == 1.0 ? 0.0 : excluded;
            continue;
        }
        log_w[k] = (spec.alpha - 1.0) * std::log(t) - spec.rate * std::pow(t, spec.beta);
    }

    const double top = *std::max_element(log_w.begin(), log_w.end());
    if (!std::isfinite(top))
        throw NumericError("maxent: degenerate grid, no finite weights");
    // Neumaier-compensated sum; fine grids have many terms of similar size.
    double total = 0.0, carry = 0.0;
    for (std::size_t k = 0; k <= spec.k_grid; ++k) {
        const double w = std::exp(log_w[k] - top);
        grid.masses[k] = w;
        const double s = total + w;
        carry += std::abs(total) >= w ? (total - s) + w : (w - s) + total;
        total = s;
    }
    total += carry;
    if (!(total > 0.0) || !std::isfinite(total))
        throw NumericError("maxent: weights do not normalize");
    for (auto& m : grid.masses)
        m /= total;
    return grid;
}

} // namespace pathlaw
