#include "steiner/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define STEINER_X86 1
#else
#define STEINER_X86 0
#endif

#if defined(__aarch64__)
#include <arm_neon.h>
#define STEINER_NEON 1
#else
#define STEINER_NEON 0
#endif

namespace steiner::kernels {

void min_plus_scalar(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                     std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, std::uint32_t tag) {
  assert(arg.size() == best.size() && lhs.size() == best.size() && rhs.size() == best.size());
  const std::size_t n = best.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t c = lhs[i] + rhs[i];
    if (c < best[i]) {
      best[i] = c;
      arg[i] = tag;
    }
  }
}

#if STEINER_X86
__attribute__((target("avx2"))) void min_plus_avx2(std::span<std::int32_t> best, std::span<std::uint32_t> arg,
                                                   std::span<const std::int32_t> lhs,
                                                   std::span<const std::int32_t> rhs, std::uint32_t tag) {
  assert(arg.size() == best.size() && lhs.size() == best.size() && rhs.size() == best.size());
  const std::size_t n = best.size();
  const __m256i vtag = _mm256_set1_epi32(static_cast<int>(tag));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs.data() + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs.data() + i));
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(best.data() + i));
    __m256i c = _mm256_add_epi32(a, b);
    __m256i better = _mm256_cmpgt_epi32(cur, c);
    if (_mm256_testz_si256(better, better)) continue;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(best.data() + i), _mm256_blendv_epi8(cur, c, better));
    __m256i old_arg = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(arg.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(arg.data() + i), _mm256_blendv_epi8(old_arg, vtag, better));
  }
  min_plus_scalar(best.subspan(i), arg.subspan(i), lhs.subspan(i), rhs.subspan(i), tag);
}
#endif

#if STEINER_NEON
void min_plus_neon(std::span<std::int32_t> best, std::span<std::uint32_t> arg, std::span<const std::int32_t> lhs,
                   std::span<const std::int32_t> rhs, std::uint32_t tag) {
  const std::size_t n = best.size();
  const uint32x4_t vtag = vdupq_n_u32(tag);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    int32x4_t c = vaddq_s32(vld1q_s32(lhs.data() + i), vld1q_s32(rhs.data() + i));
    int32x4_t cur = vld1q_s32(best.data() + i);
    uint32x4_t better = vcltq_s32(c, cur);
    vst1q_s32(best.data() + i, vbslq_s32(better, c, cur));
    vst1q_u32(arg.data() + i, vbslq_u32(better, vtag, vld1q_u32(arg.data() + i)));
  }
  min_plus_scalar(best.subspan(i), arg.subspan(i), lhs.subspan(i), rhs.subspan(i), tag);
}
#endif

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if STEINER_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
      return STEINER_NEON != 0;
  }
  return false;
}

Backend detect_backend() {
  if (backend_supported(Backend::kAvx2)) return Backend::kAvx2;
  if (backend_supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

MinPlusFn min_plus_for(Backend b) {
  if (!backend_supported(b)) return &min_plus_scalar;
  switch (b) {
#if STEINER_X86
    case Backend::kAvx2:
      return &min_plus_avx2;
#endif
#if STEINER_NEON
    case Backend::kNeon:
      return &min_plus_neon;
#endif
    default:
      return &min_plus_scalar;
  }
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("STEINER_KERNEL")) {
    std::string s(env);
    if (s == "scalar") return Backend::kScalar;
    if (s == "avx2" && backend_supported(Backend::kAvx2)) return Backend::kAvx2;
    if (s == "neon" && backend_supported(Backend::kNeon)) return Backend::kNeon;
  }
  return detect_backend();
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  active().store(backend_supported(b) ? b : Backend::kScalar, std::memory_order_relaxed);
}

void min_plus(std::span<std::int32_t> best, std::span<std::uint32_t> arg, std::span<const std::int32_t> lhs,
              std::span<const std::int32_t> rhs, std::uint32_t tag) {
  min_plus_for(active_backend())(best, arg, lhs, rhs, tag);
}

}  // namespace steiner::kernels
