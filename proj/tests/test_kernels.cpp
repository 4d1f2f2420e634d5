#include <gtest/gtest.h>

#include <random>

#include "oreext/kernels.hpp"

using namespace oreext;
namespace k = oreext::kernels;

namespace {

Table random_table(std::size_t len, Elem range, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> d(0, range - 1);
  Table t(len);
  for (auto& x : t) x = d(rng);
  return t;
}

}  // namespace

TEST(Kernels, ScalarReference) {
  Table outer = {3, 1, 2, 0}, inner = {1, 1, 3, 0}, out(4);
  k::scalar::compose(outer, inner, out);
  EXPECT_EQ(out, (Table{1, 1, 0, 3}));

  Table add = {0, 1, 2, 1, 2, 0, 2, 0, 1};  // Z/3
  Table lhs = {0, 1, 2}, rhs = {2, 2, 2};
  Table sum(3);
  k::scalar::table_add(add, 3, lhs, rhs, sum);
  EXPECT_EQ(sum, (Table{2, 0, 1}));

  EXPECT_EQ(k::scalar::first_mismatch(lhs, lhs), 3u);
  EXPECT_EQ(k::scalar::first_mismatch(lhs, rhs), 0u);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST(Kernels, Avx2MatchesScalar) {
  if (!k::isa_available(k::Isa::avx2)) GTEST_SKIP() << "no AVX2";
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 15u, 16u, 17u, 64u, 255u, 256u, 1000u}) {
    Table outer = random_table(n, static_cast<Elem>(n), rng);
    Table inner = random_table(n, static_cast<Elem>(n), rng);
    Table a(n), b(n);
    k::scalar::compose(outer, inner, a);
    k::avx2::compose(outer, inner, b);
    EXPECT_EQ(a, b) << n;

    Table add(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) add[x * n + y] = static_cast<Elem>((x + y) % n);
    k::scalar::table_add(add, n, outer, inner, a);
    k::avx2::table_add(add, n, outer, inner, b);
    EXPECT_EQ(a, b) << n;

    for (std::size_t pos = 0; pos <= n; pos += std::max<std::size_t>(1, n / 5)) {
      Table c = outer;
      if (pos < n) c[pos] ^= 1;
      EXPECT_EQ(k::scalar::first_mismatch(outer, c), k::avx2::first_mismatch(outer, c));
      EXPECT_EQ(k::avx2::first_mismatch(outer, c), pos < n ? pos : n);
    }
  }
}

TEST(Kernels, DispatchCanBeForced) {
  const auto before = k::active_isa();
  k::force_isa(k::Isa::scalar);
  EXPECT_EQ(k::active_isa(), k::Isa::scalar);
  if (k::isa_available(k::Isa::avx2)) {
    k::force_isa(k::Isa::avx2);
    EXPECT_EQ(k::active_isa(), k::Isa::avx2);
  }
  k::force_isa(before);
}
#endif
