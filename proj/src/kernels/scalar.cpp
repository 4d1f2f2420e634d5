#include "oreext/kernels.hpp"

namespace oreext::kernels::scalar {

void compose(std::span<const Elem> outer, std::span<const Elem> inner, std::span<Elem> out) {
  for (std::size_t b = 0; b < inner.size(); ++b) out[b] = outer[inner[b]];
}

void table_add(std::span<const Elem> add_table, std::size_t n, std::span<const Elem> lhs,
               std::span<const Elem> rhs, std::span<Elem> out) {
  for (std::size_t b = 0; b < lhs.size(); ++b) out[b] = add_table[lhs[b] * n + rhs[b]];
}

std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return i;
  return a.size();
}

}  // namespace oreext::kernels::scalar
