#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "oreext/kernels.hpp"

namespace oreext::kernels {

namespace {

struct Vtable {
  void (*compose)(std::span<const Elem>, std::span<const Elem>, std::span<Elem>);
  void (*table_add)(std::span<const Elem>, std::size_t, std::span<const Elem>,
                    std::span<const Elem>, std::span<Elem>);
  std::size_t (*first_mismatch)(std::span<const Elem>, std::span<const Elem>);
};

constexpr Vtable kScalar{&scalar::compose, &scalar::table_add, &scalar::first_mismatch};
#if defined(__x86_64__) || defined(_M_X64)
constexpr Vtable kAvx2{&avx2::compose, &avx2::table_add, &avx2::first_mismatch};
#endif

const Vtable& table_for(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

Isa detect() {
  if (const char* env = std::getenv("ORE_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel ISA not available: " + std::string(to_string(isa)));
  current().store(isa, std::memory_order_relaxed);
}

void compose(std::span<const Elem> outer, std::span<const Elem> inner, std::span<Elem> out) {
  table_for(active_isa()).compose(outer, inner, out);
}

void table_add(std::span<const Elem> add_table, std::size_t n, std::span<const Elem> lhs,
               std::span<const Elem> rhs, std::span<Elem> out) {
  table_for(active_isa()).table_add(add_table, n, lhs, rhs, out);
}

std::size_t first_mismatch(std::span<const Elem> a, std::span<const Elem> b) {
  return table_for(active_isa()).first_mismatch(a, b);
}

}  // namespace oreext::kernels
