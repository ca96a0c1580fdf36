#include <atomic>
#include <cstdlib>
#include <string>

#include "uavmm/simd/kernels.hpp"

namespace uavmm::simd {

#if defined(UAVMM_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(UAVMM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* find_table(std::string_view name) {
  for (const KernelTable* t : available_kernels()) {
    if (t->name == name) return t;
  }
  return nullptr;
}

const KernelTable* initial_table() {
  const std::vector<const KernelTable*> tables = available_kernels();
  const KernelTable* best = tables.back();
  if (const char* env = std::getenv("UAVMM_SIMD")) {
    const std::string_view want(env);
    if (want == "auto" || want.empty()) return best;
    if (const KernelTable* t = find_table(want)) return t;
  }
  return best;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
#if defined(UAVMM_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&avx2_kernels());
#endif
  return out;
}

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view name) {
  const KernelTable* t = name == "auto" ? available_kernels().back() : find_table(name);
  if (t == nullptr) return false;
  active().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace uavmm::simd
