#include <algorithm>
#include <cmath>
#include <numeric>

#include "pathlaw/error.hpp"
#include "pathlaw/graph.hpp"

namespace pathlaw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Graph erdos_renyi(std::size_t n, double pi, Rng& rng) {
    std::vector<Edge> edges;
    if (pi >= 1.0) {
        edges.reserve(n * (n - 1) / 2);
        for (NodeId v = 1; v < n; ++v)
            for (NodeId w = 0; w < v; ++w)
                edges.push_back({w, v});
        return Graph(n, std::move(edges));
    }

    // Geometric skipping over the lower triangle (Batagelj & Brandes).
    const double log_q = std::log1p(-pi);
    edges.reserve(static_cast<std::size_t>(pi * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * 1.1) + 16);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double skip = std::floor(std::log1p(-rng.uniform01()) / log_q);
        w += 1 + static_cast<std::int64_t>(skip);
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn)
            edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
    }
    return Graph(n, std::move(edges));
}

// Clique core on m+1 nodes, then each new node attaches to m distinct targets
// drawn proportionally to degree.
Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
    const std::size_t core = m + 1;
    std::vector<Edge> edges;
    edges.reserve(core * m / 2 + (n - core) * m);
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * (core * m / 2 + (n - core) * m));
    for (NodeId v = 1; v < core; ++v)
        for (NodeId w = 0; w < v; ++w) {
            edges.push_back({w, v});
            endpoints.push_back(w);
            endpoints.push_back(v);
        }

    std::vector<NodeId> chosen;
    chosen.reserve(m);
    for (NodeId v = static_cast<NodeId>(core); v < n; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            const NodeId target = endpoints[rng.below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
                chosen.push_back(target);
        }
        for (NodeId target : chosen) {
            edges.push_back({target, v});
            endpoints.push_back(target);
            endpoints.push_back(v);
        }
    }
    return Graph(n, std::move(edges));
}

template <class Draw>
std::vector<std::size_t> degree_sequence(std::size_t n, Draw draw) {
    std::vector<std::size_t> degrees(n);
    const auto bounded = [&] {
        for (;;) {
            const std::size_t d = draw();
            if (d <= n - 1)
                return d;
        }
    };
    for (auto& d : degrees)
        d = bounded();
    std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    while (total % 2 != 0) {
        total -= degrees.back();
        degrees.back() = bounded();
        total += degrees.back();
    }
    return degrees;
}

} // namespace

std::vector<std::size_t> power_law_degrees(std::size_t n, double gamma, Rng& rng) {
    // Continuous Pareto with x_min = 1, floored: P(d >= k) = k^-(gamma-1).
    const double exponent = -1.0 / (gamma - 1.0);
    return degree_sequence(n, [&]() -> std::size_t {
        const double x = std::pow(rng.uniform_open(), exponent);
        if (!(x < 1e15))
            return static_cast<std::size_t>(-1);
        return static_cast<std::size_t>(std::floor(x));
    });
}

std::vector<std::size_t> log_normal_degrees(std::size_t n, double mu, double xi, Rng& rng) {
    return degree_sequence(n, [&]() -> std::size_t {
        const double x = std::exp(mu + xi * rng.normal());
        if (!(x < 1e15))
            return static_cast<std::size_t>(-1);
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(x)));
    });
}

Graph configuration_model(std::span<const std::size_t> degrees, Rng& rng) {
    std::vector<NodeId> stubs;
    stubs.reserve(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}));
    for (std::size_t v = 0; v < degrees.size(); ++v)
        stubs.insert(stubs.end(), degrees[v], static_cast<NodeId>(v));
    if (stubs.size() % 2 != 0)
        throw ParameterError("configuration_model: degree sum must be even");

    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        edges.push_back({stubs[i], stubs[i + 1]});
    return Graph(degrees.size(), std::move(edges));
}

std::string model_name(const GraphModelSpec& spec) {
    return std::visit(overloaded{
                          [](const ErdosRenyi&) { return std::string("er"); },
                          [](const BarabasiAlbert&) { return std::string("ba"); },
                          [](const PowerLaw&) { return std::string("pl"); },
                          [](const LogNormalDegrees&) { return std::string("ln"); },
                      },
                      spec.model);
}

void validate(const GraphModelSpec& spec) {
    if (spec.n < 2)
        throw ParameterError("graph model: n must be at least 2");
    std::visit(overloaded{
                   [](const ErdosRenyi& p) {
                       if (!(p.pi > 0.0 && p.pi <= 1.0))
                           throw ParameterError("er: edge probability pi must lie in (0, 1]");
                   },
                   [&](const BarabasiAlbert& p) {
                       if (p.m < 1)
                           throw ParameterError("ba: attachment parameter m must be >= 1");
                       if (p.m + 1 > spec.n)
                           throw ParameterError("ba: n must be at least m + 1");
                   },
                   [](const PowerLaw& p) {
                       if (!(p.gamma > 2.0) || !std::isfinite(p.gamma))
                           throw ParameterError("pl: exponent gamma must be > 2");
                   },
                   [](const LogNormalDegrees& p) {
                       if (!std::isfinite(p.mu))
                           throw ParameterError("ln: mu must be finite");
                       if (!(p.xi > 0.0) || !std::isfinite(p.xi))
                           throw ParameterError("ln: xi must be > 0");
                   },
               },
               spec.model);
}

Graph generate(const GraphModelSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    return std::visit(overloaded{
                          [&](const ErdosRenyi& p) { return erdos_renyi(spec.n, p.pi, rng); },
                          [&](const BarabasiAlbert& p) { return barabasi_albert(spec.n, p.m, rng); },
                          [&](const PowerLaw& p) {
                              const auto d = power_law_degrees(spec.n, p.gamma, rng);
                              return configuration_model(d, rng);
                          },
                          [&](const LogNormalDegrees& p) {
                              const auto d = log_normal_degrees(spec.n, p.mu, p.xi, rng);
                              return configuration_model(d, rng);
                          },
                      },
                      spec.model);
}

} // namespace pathlaw
