#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace steiner::kernels {

/// Costs at or above this value mean "unreachable". Two such values still sum
/// without overflow.
inline constexpr std::int32_t kInfinity = 1 << 29;

/// Element-wise min-plus update used by the subset merge of the Steiner DP:
///
///   for each i: c = lhs[i] + rhs[i]; if c < best[i] { best[i] = c; arg[i] = tag; }
///
/// The comparison is strict, so earlier tags win ties. All spans have equal
/// length.
using MinPlusFn = void (*)(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                           std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs,
                           std::uint32_t tag);

void min_plus_scalar(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                     std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, std::uint32_t tag);

#if defined(__x86_64__) || defined(_M_X64)
void min_plus_avx2(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                   std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, std::uint32_t tag);
#endif

#if defined(__aarch64__)
void min_plus_neon(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                   std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, std::uint32_t tag);
#endif

enum class Backend { kScalar, kAvx2, kNeon };

/// Best backend the running CPU supports.
Backend detect_backend();
bool backend_supported(Backend b);
std::string_view backend_name(Backend b);

/// Kernel for `b`; falls back to scalar when `b` is unsupported.
MinPlusFn min_plus_for(Backend b);

/// Process-wide selection, initialized from detect_backend(). The
/// STEINER_KERNEL environment variable ("scalar", "avx2", "neon") overrides
/// detection at first use.
Backend active_backend();
void set_active_backend(Backend b);
void min_plus(std::span<std::int32_t> best, std::span<std::uint32_t> arg, std::span<const std::int32_t> lhs,
              std::span<const std::int32_t> rhs, std::uint32_t tag);

}  // namespace steiner::kernels
