#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "relheat/kernels.hpp"

namespace relheat::kernels {

// Defined in kernels_avx2.cpp; null when the build or the CPU lacks AVX2.
const Backend* avx2_backend_impl();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Backend* resolve_default() {
  if (const char* env = std::getenv("RELHEAT_KERNELS")) {
    const std::string name(env);
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2" && avx2_backend()) return avx2_backend();
    // Unknown or unsupported request: fall through to autodetect.
  }
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend* avx2_backend() {
  static const Backend* backend =
      cpu_has_avx2() ? avx2_backend_impl() : nullptr;
  return backend;
}

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = resolve_default();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

void select(const std::string& name) {
  if (name == "scalar") {
    g_active.store(&scalar_backend(), std::memory_order_release);
    return;
  }
  if (name == "avx2") {
    if (const Backend* b = avx2_backend()) {
      g_active.store(b, std::memory_order_release);
      return;
    }
    throw std::runtime_error("kernel backend 'avx2' not supported on this CPU");
  }
  throw std::runtime_error("unknown kernel backend '" + name + "'");
}

std::vector<std::string> available() {
  std::vector<std::string> names{"scalar"};
  if (avx2_backend()) names.push_back("avx2");
  return names;
}

}  // namespace relheat::kernels
