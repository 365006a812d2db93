#include "pathlaw/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace pathlaw::kernels::avx2 {

namespace {

double finish(__m256d acc) noexcept {
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    return (s[0] + s[1]) + (s[2] + s[3]);
}

} // namespace

double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(a.data() + i)),
                                        _mm256_sqrt_pd(_mm256_loadu_pd(b.data() + i)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double total = finish(acc);
    for (; i < n; ++i) {
        const double d = __builtin_sqrt(a[i]) - __builtin_sqrt(b[i]);
        total += d * d;
    }
    return total;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                               _mm256_loadu_pd(b.data() + i)));
    double total = finish(acc);
    for (; i < n; ++i)
        total += a[i] * b[i];
    return total;
}

void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) noexcept {
    const std::size_t n = acc.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto* dst = reinterpret_cast<__m256i*>(acc.data() + i);
        const auto* src = reinterpret_cast<const __m256i*>(x.data() + i);
        _mm256_storeu_si256(dst, _mm256_add_epi64(_mm256_loadu_si256(dst), _mm256_loadu_si256(src)));
    }
    for (; i < n; ++i)
        acc[i] += x[i];
}

} // namespace pathlaw::kernels::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the scalar reference and
// isa_available(Isa::avx2) reports false.
namespace pathlaw::kernels::avx2 {

double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) noexcept {
    return scalar::sqrt_diff_sq_sum(a, b);
}
double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return scalar::dot(a, b);
}
void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) noexcept {
    scalar::add_counts(acc, x);
}

} // namespace pathlaw::kernels::avx2

#endif
