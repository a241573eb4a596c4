#include "kge/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace kge::kernels {
namespace {

const Kernels* g_active = nullptr;

const Kernels* pick() {
  const char* env = std::getenv("KGE_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return &scalar();
    if (std::strcmp(env, "avx2") == 0 && avx2() != nullptr) return avx2();
  }
  if (const Kernels* k = avx2()) return k;
  return &scalar();
}

}  // namespace

const Kernels& active() {
  if (g_active == nullptr) g_active = pick();
  return *g_active;
}

void set_active(const Kernels& k) { g_active = &k; }

}  // namespace kge::kernels
