#include "pathlaw/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "pathlaw/error.hpp"

namespace pathlaw::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detect() noexcept {
    if (const char* env = std::getenv("PATHLAW_SIMD"); env && std::string_view(env) == "scalar")
        return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b)
        throw ParameterError("kernel operands differ in length");
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) noexcept {
    return isa == Isa::scalar || cpu_has_avx2();
}

Isa active_isa() noexcept {
    return current().load(std::memory_order_relaxed);
}

void set_isa(Isa isa) {
    if (!isa_available(isa))
        throw ParameterError("requested SIMD variant is not supported on this CPU");
    current().store(isa, std::memory_order_relaxed);
}

double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size());
    return active_isa() == Isa::avx2 ? avx2::sqrt_diff_sq_sum(a, b) : scalar::sqrt_diff_sq_sum(a, b);
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size());
    return active_isa() == Isa::avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) {
    require_same_size(acc.size(), x.size());
    if (active_isa() == Isa::avx2)
        avx2::add_counts(acc, x);
    else
        scalar::add_counts(acc, x);
}

} // namespace pathlaw::kernels
