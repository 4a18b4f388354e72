#include "mgl/perm_kernels.hpp"

#if defined(MGL_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define MGL_AVX2 __attribute__((target("avx2")))

namespace mgl::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 8;

MGL_AVX2 inline __m256i load(const Point* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

// Images are below 2^31 (degrees are far smaller), so the signed 32-bit
// gather indices are safe.
MGL_AVX2 void compose(std::span<const Point> first, std::span<const Point> second,
                      std::span<Point> out) {
  const std::size_t n = first.size();
  const auto* base = reinterpret_cast<const int*>(second.data());
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i idx = load(first.data() + i);
    const __m256i img = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), img);
  }
  for (; i < n; ++i) out[i] = second[first[i]];
}

MGL_AVX2 bool equal(std::span<const Point> x, std::span<const Point> y) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 * kLanes <= n; i += 4 * kLanes) {
    const __m256i d0 = _mm256_xor_si256(load(x.data() + i), load(y.data() + i));
    const __m256i d1 = _mm256_xor_si256(load(x.data() + i + 8), load(y.data() + i + 8));
    const __m256i d2 = _mm256_xor_si256(load(x.data() + i + 16), load(y.data() + i + 16));
    const __m256i d3 = _mm256_xor_si256(load(x.data() + i + 24), load(y.data() + i + 24));
    const __m256i any = _mm256_or_si256(_mm256_or_si256(d0, d1), _mm256_or_si256(d2, d3));
    if (!_mm256_testz_si256(any, any)) return false;
  }
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i d = _mm256_xor_si256(load(x.data() + i), load(y.data() + i));
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (x[i] != y[i]) return false;
  return true;
}

MGL_AVX2 std::size_t first_moved(std::span<const Point> x) {
  const std::size_t n = x.size();
  __m256i ramp = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(static_cast<int>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i eq = _mm256_cmpeq_epi32(load(x.data() + i), ramp);
    const unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    if (mask != 0xFFu) return i + static_cast<std::size_t>(__builtin_ctz(~mask & 0xFFu));
    ramp = _mm256_add_epi32(ramp, step);
  }
  for (; i < n; ++i)
    if (x[i] != i) return i;
  return n;
}

MGL_AVX2 bool is_identity(std::span<const Point> x) { return first_moved(x) == x.size(); }

}  // namespace mgl::kernels::avx2

#endif
