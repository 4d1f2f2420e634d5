#include "oreext/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#define OREEXT_AVX2 __attribute__((target("avx2")))

namespace oreext::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 8;

OREEXT_AVX2 inline __m256i load(const Elem* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
OREEXT_AVX2 inline void store(Elem* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}
}  // namespace

OREEXT_AVX2 void compose(std::span<const Elem> outer, std::span<const Elem> inner,
                         std::span<Elem> out) {
  const auto* base = reinterpret_cast<const int*>(outer.data());
  const std::size_t n = inner.size();
  std::size_t b = 0;
  for (; b + kLanes <= n; b += kLanes) {
    const __m256i idx = load(inner.data() + b);
    store(out.data() + b, _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; b < n; ++b) out[b] = outer[inner[b]];
}

OREEXT_AVX2 void table_add(std::span<const Elem> add_table, std::size_t n,
                           std::span<const Elem> lhs, std::span<const Elem> rhs,
                           std::span<Elem> out) {
  // Gather indices are signed 32-bit.
  if (n * n > 0x7fffffffu) {
    scalar::table_add(add_table, n, lhs, rhs, out);
    return;
  }
  const auto* base = reinterpret_cast<const int*>(add_table.data());
  const __m256i width = _mm256_set1_epi32(static_cast<int>(n));
  const std::size_t len = lhs.size();
  std::size_t b = 0;
  for (; b + kLanes <= len; b += kLanes) {
    const __m256i row = _mm256_mullo_epi32(load(lhs.data() + b), width);
    const __m256i idx = _mm256_add_epi32(row, load(rhs.data() + b));
    store(out.data() + b, _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; b < len; ++b) out[b] = add_table[lhs[b] * n + rhs[b]];
}

OREEXT_AVX2 std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i eq = _mm256_cmpeq_epi32(load(a.data() + i), load(b.data() + i));
    const auto mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    if (mask != 0xffu) return i + static_cast<std::size_t>(std::countr_one(mask));
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

}  // namespace oreext::kernels::avx2

#endif
