#include <atomic>

#include "moebius/kernels.hpp"

namespace moebius::kernels {

const KernelTable* avx2_table();

namespace {
std::atomic<Mode> g_mode{Mode::Auto};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
}  // namespace

const KernelTable* avx2() {
  static const KernelTable* table = cpu_has_avx2() ? avx2_table() : nullptr;
  return table;
}

void set_mode(Mode m) { g_mode = m; }
Mode mode() { return g_mode; }

const KernelTable& active() {
  if (g_mode == Mode::Auto) {
    if (const KernelTable* t = avx2()) return *t;
  }
  return scalar();
}

}  // namespace moebius::kernels
