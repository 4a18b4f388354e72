#include <cstdlib>
#include <string_view>

#include "mgl/perm_kernels.hpp"

namespace mgl::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &scalar::compose, &scalar::equal, &scalar::is_identity,
                                 &scalar::first_moved};
  return table;
}

const KernelTable* avx2_table() {
#if defined(MGL_HAVE_AVX2_KERNELS)
  static const KernelTable table{"avx2", &avx2::compose, &avx2::equal, &avx2::is_identity,
                                 &avx2::first_moved};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

namespace {

bool scalar_forced() {
  const char* env = std::getenv("MGL_FORCE_SCALAR");
  return env != nullptr && *env != '\0' && std::string_view(env) != "0";
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    if (!scalar_forced()) {
      if (const KernelTable* t = avx2_table()) return *t;
    }
    return scalar_table();
  }();
  return chosen;
}

}  // namespace mgl::kernels
