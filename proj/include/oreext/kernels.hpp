#pragma once

// Table kernels behind the pi-map calculus. Every map on a finite group is a
// value table, so composition is a gather and pointwise addition is a gather
// through the addition table. A scalar reference and an AVX2 variant exist for
// each kernel; the variant is picked once at startup from CPUID and can be
// overridden with ORE_KERNELS=scalar|avx2 or force_isa().

#include <cstddef>
#include <span>
#include <string_view>

#include "oreext/types.hpp"

namespace oreext::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Throws std::invalid_argument when the requested ISA is unavailable.
void force_isa(Isa isa);

/// out[b] = outer[inner[b]]
void compose(std::span<const Elem> outer, std::span<const Elem> inner, std::span<Elem> out);

/// out[b] = add_table[lhs[b] * n + rhs[b]]
void table_add(std::span<const Elem> add_table, std::size_t n, std::span<const Elem> lhs,
               std::span<const Elem> rhs, std::span<Elem> out);

/// Index of the first position where a and b differ, or a.size() if none.
std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b);

namespace scalar {
void compose(std::span<const Elem> outer, std::span<const Elem> inner, std::span<Elem> out);
void table_add(std::span<const Elem> add_table, std::size_t n, std::span<const Elem> lhs,
               std::span<const Elem> rhs, std::span<Elem> out);
std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void compose(std::span<const Elem> outer, std::span<const Elem> inner, std::span<Elem> out);
void table_add(std::span<const Elem> add_table, std::size_t n, std::span<const Elem> lhs,
               std::span<const Elem> rhs, std::span<Elem> out);
std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b);
}  // namespace avx2
#endif

}  // namespace oreext::kernels
