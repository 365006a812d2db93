#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numeric>

#include "pathlaw/error.hpp"
#include "pathlaw/fit.hpp"
#include "pathlaw/graph.hpp"

using namespace pathlaw;

namespace {

std::vector<double> scaled_masses(const ModelParams& p, std::int64_t K, double total) {
    auto m = discretize(p, K).masses;
    for (auto& x : m)
        x *= total;
    return m;
}

std::vector<double> values(const ModelParams& p) {
    return std::visit(
        [](const auto& q) -> std::vector<double> {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, GammaParams>)
                return {q.theta, q.eta};
            else if constexpr (std::is_same_v<T, WeibullParams>)
                return {q.lambda, q.kappa};
            else if constexpr (std::is_same_v<T, LogNormalParams>)
                return {q.mu, q.xi};
            else
                return {q.sigma, q.alpha, q.beta};
        },
        p);
}

double empirical_mean(const std::vector<double>& c) {
    double s = 0, w = 0;
    for (std::size_t t = 0; t < c.size(); ++t) {
        s += c[t];
        w += static_cast<double>(t) * c[t];
    }
    return w / s;
}

// Separating-axis test for the convex hulls of two planar point sets.
bool hulls_disjoint(const std::vector<std::array<double, 2>>& a, const std::vector<std::array<double, 2>>& b) {
    std::vector<std::array<double, 2>> axes;
    for (const auto* set : {&a, &b})
        for (std::size_t i = 0; i < set->size(); ++i)
            for (std::size_t j = i + 1; j < set->size(); ++j) {
                const double dx = (*set)[j][0] - (*set)[i][0], dy = (*set)[j][1] - (*set)[i][1];
                axes.push_back({-dy, dx});
                axes.push_back({dx, dy});
            }
    axes.push_back({1, 0});
    axes.push_back({0, 1});
    for (const auto& ax : axes) {
        const auto range = [&](const auto& set) {
            double lo = INFINITY, hi = -INFINITY;
            for (const auto& p : set) {
                const double v = p[0] * ax[0] + p[1] * ax[1];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return std::pair{lo, hi};
        };
        const auto [alo, ahi] = range(a);
        const auto [blo, bhi] = range(b);
        if (ahi < blo || bhi < alo)
            return true;
    }
    return false;
}

} // namespace

TEST(Hellinger, Examples) {
    const std::vector<double> f{0.2, 0.5, 0.3};
    EXPECT_EQ(hellinger(f, f), 0.0);
    EXPECT_NEAR(hellinger(std::vector<double>{1, 0}, std::vector<double>{0, 1}), std::sqrt(2.0) / 2, 1e-15);
    EXPECT_NEAR(hellinger(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}),
                0.5 * std::sqrt(std::pow(1 - std::sqrt(0.5), 2) + 0.5), 1e-15);
    EXPECT_NEAR(hellinger(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}), 0.38268, 1e-5);
}

TEST(Hellinger, NormalizesHistogramCounts) {
    const std::vector<double> f{0.2, 0.5, 0.3}, h{20, 50, 30};
    EXPECT_NEAR(hellinger(h, f), 0.0, 1e-15);
}

TEST(Hellinger, BoundedAndSymmetric) {
    Rng rng(1);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> a(6), b(6);
        for (auto& x : a)
            x = rng.bernoulli(0.3) ? 0.0 : rng.uniform01();
        for (auto& x : b)
            x = rng.uniform01();
        a[0] += 1e-3;
        const double sa = std::accumulate(a.begin(), a.end(), 0.0), sb = std::accumulate(b.begin(), b.end(), 0.0);
        for (auto& x : a)
            x /= sa;
        for (auto& x : b)
            x /= sb;
        const double h = hellinger(a, b);
        ASSERT_GE(h, 0.0);
        ASSERT_LE(h, std::sqrt(0.5) + 1e-15);
        ASSERT_NEAR(h, hellinger(b, a), 1e-15);
    }
}

TEST(Hellinger, Errors) {
    EXPECT_THROW(hellinger(std::vector<double>{1, 0}, std::vector<double>{1}), ParameterError);
    EXPECT_THROW(hellinger(std::vector<double>{1, -1}, std::vector<double>{0.5, 0.5}), DomainError);
    EXPECT_THROW(hellinger(std::vector<double>{0, 0}, std::vector<double>{0.5, 0.5}), DomainError);
}

TEST(Fit, RecoversGenGamma) {
    const auto counts = scaled_masses(GenGammaParams{5, 4, 2}, 30, 1e6);
    const auto r = fit(counts, Family::gengamma);
    const auto& g = std::get<GenGammaParams>(r.params);
    EXPECT_NEAR(g.sigma / 5, 1, 1e-3);
    EXPECT_NEAR(g.alpha / 4, 1, 1e-3);
    EXPECT_NEAR(g.beta / 2, 1, 1e-3);
    EXPECT_LT(r.hellinger, 1e-6);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.K, 30u);
}

TEST(Fit, RecoversTwoParameterFamilies) {
    const std::vector<ModelParams> truth{GammaParams{1.3, 4.0}, WeibullParams{6.0, 2.5}, LogNormalParams{1.5, 0.35}};
    for (const auto& p : truth) {
        const auto r = fit(scaled_masses(p, 40, 1e5), family_of(p));
        EXPECT_LT(r.hellinger, 1e-6) << family_name(family_of(p));
        const auto got = values(r.params), want = values(p);
        for (std::size_t i = 0; i < want.size(); ++i)
            EXPECT_NEAR(got[i], want[i], 1e-4 * std::abs(want[i])) << family_name(family_of(p)) << " #" << i;
    }
}

TEST(Fit, ScaleEquivariant) {
    const auto small = scaled_masses(GammaParams{1.1, 3.0}, 25, 1.0);
    const auto big = scaled_masses(GammaParams{1.1, 3.0}, 25, 1e7);
    const auto a = fit(small, Family::weibull), b = fit(big, Family::weibull);
    const auto& pa = std::get<WeibullParams>(a.params);
    const auto& pb = std::get<WeibullParams>(b.params);
    EXPECT_NEAR(pa.lambda, pb.lambda, 1e-6 * pa.lambda);
    EXPECT_NEAR(pa.kappa, pb.kappa, 1e-6 * pa.kappa);
    EXPECT_NEAR(a.hellinger, b.hellinger, 1e-9);
}

TEST(Fit, Underdetermined) {
    EXPECT_THROW(fit(std::vector<double>{0, 5, 3}, Family::gengamma), UnderdeterminedError);
    EXPECT_THROW(fit(std::vector<double>{0, 5, 3}, Family::gamma), UnderdeterminedError);
    EXPECT_NO_THROW(fit(std::vector<double>{0, 5, 3, 1}, Family::gamma));
    EXPECT_THROW(fit(std::vector<double>{0, 0}, Family::gamma), UnderdeterminedError);
    EXPECT_THROW(fit(std::vector<double>{1, -2, 3, 4}, Family::gamma), DomainError);
}

TEST(Fit, SingleBinCompleteGraphIsUnderdetermined) {
    // A K4 histogram {1: 12} has one nonempty bin; no family is identified.
    const std::vector<double> k4{0, 12};
    EXPECT_THROW(fit(k4, Family::gengamma), UnderdeterminedError);
    const auto all = fit_all(k4);
    EXPECT_FALSE(all.best.has_value());
    for (const auto& o : all.outcomes) {
        EXPECT_FALSE(o.result.has_value());
        EXPECT_NE(o.error.find("nonempty bins"), std::string::npos);
    }
}

TEST(Fit, LogLikelihoodOfTruthIsMaximal) {
    const auto counts = scaled_masses(WeibullParams{3.0, 1.8}, 20, 1000.0);
    const auto r = fit(counts, Family::weibull);
    EXPECT_NEAR(r.log_likelihood, log_likelihood(counts, WeibullParams{3.0, 1.8}), 1e-6);
    EXPECT_GE(r.log_likelihood + 1e-9, log_likelihood(counts, WeibullParams{3.1, 1.8}));
}

TEST(FitAll, GenGammaDataPicksGenGamma) {
    const auto all = fit_all(scaled_masses(GenGammaParams{3, 6, 0.8}, 30, 1e6));
    ASSERT_TRUE(all.best.has_value());
    EXPECT_EQ(*all.best, Family::gengamma);
    EXPECT_EQ(all.outcomes.size(), 4u);
}

TEST(FitAll, ExponentialDataIsNested) {
    const auto all = fit_all(scaled_masses(GenGammaParams{1, 1, 1}, 20, 1e6));
    const double gg = all.get(Family::gengamma)->hellinger;
    EXPECT_NEAR(all.get(Family::gamma)->hellinger, gg, 1e-6);
    EXPECT_NEAR(all.get(Family::weibull)->hellinger, gg, 1e-6);
    ASSERT_TRUE(all.best.has_value());
    EXPECT_NE(*all.best, Family::lognormal);
}

TEST(FitAll, GenGammaNeverWorseThanNestedFamilies) {
    const std::vector<std::vector<double>> data{{0, 10, 80, 300, 150, 12, 1},
                                                {0, 2, 5, 40, 90, 60, 30, 8, 2, 1},
                                                {3, 30, 20, 10, 6, 3, 2, 1, 1}};
    for (const auto& d : data) {
        const auto all = fit_all(d);
        const double gg = all.get(Family::gengamma)->log_likelihood;
        EXPECT_GE(gg + 1e-9 * std::abs(gg), all.get(Family::gamma)->log_likelihood);
        EXPECT_GE(gg + 1e-9 * std::abs(gg), all.get(Family::weibull)->log_likelihood);
    }
}

TEST(PredictMean, ExponentialData) {
    const auto counts = scaled_masses(GenGammaParams{10, 1, 1}, 400, 1e6);
    const auto r = fit(counts, Family::gamma);
    const auto m = predict_mean(r);
    EXPECT_FALSE(m.flagged);
    EXPECT_NEAR(m.value / empirical_mean(counts), 1.0, 1e-3);
}

TEST(PredictMean, FlagsUnconvergedFits) {
    FitResult r;
    r.params = GammaParams{2, 3};
    r.converged = false;
    EXPECT_TRUE(predict_mean(r).flagged);
    EXPECT_DOUBLE_EQ(predict_mean(r).value, 6.0);
}

TEST(Embed, ProjectsParameters) {
    FitResult r;
    r.family = Family::gengamma;
    r.params = GenGammaParams{5, 4, 2};
    r.hellinger = 0.01;
    const std::vector<NamedFit> one{{"a", r}};
    const auto pts = embed(one);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].sigma, 5);
    EXPECT_EQ(pts[0].alpha, 4);
    EXPECT_EQ(pts[0].beta, 2);

    std::vector<NamedFit> many;
    for (int i = 0; i < 5; ++i) {
        r.params = GenGammaParams{1.0 + i, 2, 3};
        many.push_back({"n" + std::to_string(i), r});
    }
    const auto out = embed(many);
    ASSERT_EQ(out.size(), 5u);
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(out[i].name, "n" + std::to_string(i));
        EXPECT_EQ(out[i].sigma, 1.0 + i);
    }

    FitResult g;
    g.family = Family::gamma;
    g.params = GammaParams{1, 1};
    EXPECT_THROW(embed(std::vector<NamedFit>{{"x", g}}), ParameterError);
}

TEST(Embed, ErdosRenyiAndBarabasiAlbertOccupySeparateRegions) {
    const auto cloud = [](auto model) {
        std::vector<std::array<double, 2>> pts;
        for (std::uint64_t i = 0; i < 20; ++i) {
            const Graph g = largest_connected_component(generate({model, 2000, derive_seed(2024, i)}));
            const auto r = fit(aggregate_histogram(g, AllSources{}), Family::gengamma);
            const auto& p = std::get<GenGammaParams>(r.params);
            pts.push_back({p.alpha, p.beta});
        }
        return pts;
    };
    EXPECT_TRUE(hulls_disjoint(cloud(ErdosRenyi{0.01}), cloud(BarabasiAlbert{1})));
}

TEST(Counts, Conversions) {
    EXPECT_EQ(to_counts(DistanceHistogram({0, 4, 2}, 3)), (std::vector<double>{0, 4, 2}));
    EXPECT_EQ(to_counts(OutbreakTrace{{1, 3}, 0}), (std::vector<double>{1, 3}));
}
