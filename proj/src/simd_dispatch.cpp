#include "nls/simd.hpp"

#include <cstdlib>

namespace nls::simd {

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

namespace {

struct Active {
  const Kernels* k;
  std::string name;
};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Active pick_default() {
  if (const char* env = std::getenv("NLSLAB_SIMD")) {
    if (const Kernels* k = backend(env)) return {k, env};
  }
  if (cpu_has_avx2()) return {avx2_kernels(), "avx2"};
#if defined(__aarch64__)
  if (neon_kernels()) return {neon_kernels(), "neon"};
#endif
  return {&scalar_kernels(), "scalar"};
}

Active& active() {
  static Active a = pick_default();
  return a;
}

}  // namespace

const Kernels* backend(const std::string& name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return cpu_has_avx2() ? avx2_kernels() : nullptr;
  if (name == "neon") return neon_kernels();
  if (name == "auto") return &kernels();
  return nullptr;
}

const Kernels& kernels() { return *active().k; }

bool force_backend(const std::string& name) {
  const Kernels* k = backend(name);
  if (!k) return false;
  active() = {k, name == "auto" ? active().name : name};
  return true;
}

std::string active_backend() { return active().name; }

std::vector<std::string> available_backends() {
  std::vector<std::string> v = {"scalar"};
  if (cpu_has_avx2()) v.push_back("avx2");
  if (neon_kernels()) v.push_back("neon");
  return v;
}

}  // namespace nls::simd
