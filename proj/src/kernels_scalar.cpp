#include <cmath>

#include "pathlaw/kernels.hpp"

namespace pathlaw::kernels::scalar {

namespace {

// Four-lane reduction matching the AVX2 register layout.
template <class Term>
double lane_sum(std::size_t n, Term term) noexcept {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t lane = 0; lane < 4; ++lane)
            s[lane] += term(i + lane);
    double total = (s[0] + s[1]) + (s[2] + s[3]);
    for (; i < n; ++i)
        total += term(i);
    return total;
}

} // namespace

double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) noexcept {
    return lane_sum(a.size(), [&](std::size_t i) {
        const double d = std::sqrt(a[i]) - std::sqrt(b[i]);
        return d * d;
    });
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return lane_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) noexcept {
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] += x[i];
}

} // namespace pathlaw::kernels::scalar
