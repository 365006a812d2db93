#pragma once

// Inner-loop kernels shared by histogram aggregation and model scoring.
//
// Each kernel has a scalar reference and an AVX2 variant; the variant is picked
// once at runtime from CPUID and can be overridden with PATHLAW_SIMD=scalar or
// set_isa(). Floating-point reductions use four interleaved partial sums that
// are combined as (s0 + s1) + (s2 + s3) before the remainder is added in order.
// The scalar reference follows the same order, so both paths agree bit-for-bit.

#include <cstdint>
#include <span>
#include <string_view>

namespace pathlaw::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
// Throws ParameterError if the ISA is not supported on this CPU.
void set_isa(Isa isa);

// sum_i (sqrt(a_i) - sqrt(b_i))^2, the Hellinger inner sum. Sizes must match.
double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b);
// sum_i a_i * b_i. Sizes must match.
double dot(std::span<const double> a, std::span<const double> b);
// acc_i += x_i. Sizes must match.
void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x);

namespace scalar {
double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) noexcept;
} // namespace scalar

namespace avx2 {
double sqrt_diff_sq_sum(std::span<const double> a, std::span<const double> b) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void add_counts(std::span<std::uint64_t> acc, std::span<const std::uint64_t> x) noexcept;
} // namespace avx2

} // namespace pathlaw::kernels
