#include "pathlaw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pathlaw {

namespace {

constexpr double worst = std::numeric_limits<double>::infinity();

struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

double safe_eval(const std::function<double(const std::vector<double>&)>& objective, const std::vector<double>& x) {
    const double v = objective(x);
    return std::isfinite(v) ? v : worst;
}

// One Nelder-Mead descent. Returns true when the tolerances were met.
bool descend(const std::function<double(const std::vector<double>&)>& objective, Simplex& s,
             const NelderMeadOptions& opts, std::size_t& iterations) {
    const std::size_t dim = s.x.size() - 1;
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    std::vector<double> trial(dim);
    std::vector<double> trial2(dim);

    const auto point = [&](double t, std::vector<double>& out, const std::vector<double>& from) {
        for (std::size_t j = 0; j < dim; ++j)
            out[j] = centroid[j] + t * (from[j] - centroid[j]);
    };

    while (iterations < opts.max_iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
        const std::size_t best = order.front();
        const std::size_t worst_i = order.back();
        const std::size_t second = order[dim - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                spread = std::max(spread, std::abs(s.x[i][j] - s.x[best][j]));
        const bool flat = std::isfinite(s.f[worst_i]) &&
                          s.f[worst_i] - s.f[best] <= opts.value_tol * (std::abs(s.f[best]) + 1e-300);
        if (flat && spread < opts.x_tol)
            return true;
        ++iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i : order)
            if (i != worst_i)
                for (std::size_t j = 0; j < dim; ++j)
                    centroid[j] += s.x[i][j];
        for (auto& c : centroid)
            c /= static_cast<double>(dim);

        point(-1.0, trial, s.x[worst_i]);
        const double f_reflect = safe_eval(objective, trial);
        if (f_reflect < s.f[best]) {
            point(-2.0, trial2, s.x[worst_i]);
            const double f_expand = safe_eval(objective, trial2);
            if (f_expand < f_reflect) {
                s.x[worst_i] = trial2;
                s.f[worst_i] = f_expand;
            } else {
                s.x[worst_i] = trial;
                s.f[worst_i] = f_reflect;
            }
            continue;
        }
        if (f_reflect < s.f[second]) {
            s.x[worst_i] = trial;
            s.f[worst_i] = f_reflect;
            continue;
        }
        // Outside contraction if the reflection beat the worst point, else inside.
        const bool outside = f_reflect < s.f[worst_i];
        point(outside ? -0.5 : 0.5, trial2, s.x[worst_i]);
        const double f_contract = safe_eval(objective, trial2);
        if (f_contract < (outside ? f_reflect : s.f[worst_i])) {
            s.x[worst_i] = trial2;
            s.f[worst_i] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best)
                continue;
            for (std::size_t j = 0; j < dim; ++j)
                s.x[i][j] = s.x[best][j] + 0.5 * (s.x[i][j] - s.x[best][j]);
            s.f[i] = safe_eval(objective, s.x[i]);
        }
    }
    return false;
}

Simplex build(const std::function<double(const std::vector<double>&)>& objective, const std::vector<double>& start,
              double step) {
    Simplex s;
    s.x.push_back(start);
    for (std::size_t j = 0; j < start.size(); ++j) {
        auto v = start;
        v[j] += step;
        s.x.push_back(std::move(v));
    }
    for (const auto& v : s.x)
        s.f.push_back(safe_eval(objective, v));
    return s;
}

std::size_t best_index(const Simplex& s) {
    return static_cast<std::size_t>(std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts) {
    NelderMeadResult result;
    result.x = std::move(start);
    result.value = safe_eval(objective, result.x);
    if (result.x.empty()) {
        result.converged = true;
        return result;
    }

    for (std::size_t round = 0; round <= opts.max_restarts; ++round) {
        const double before = result.value;
        Simplex s = build(objective, result.x, opts.initial_step);
        const bool met = descend(objective, s, opts, result.iterations);
        const std::size_t b = best_index(s);
        if (s.f[b] <= result.value) {
            result.x = s.x[b];
            result.value = s.f[b];
        }
        result.converged = met;
        if (!met)
            break;
        const bool stalled = !(before - result.value > opts.value_tol * (std::abs(result.value) + 1e-300));
        if (round > 0 && stalled)
            break;
    }
    return result;
}

} // namespace pathlaw
