#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Data-parallel inner loops shared by the mesh operators and the time
// steppers. Each kernel exists as a scalar reference implementation and,
// where the hardware supports it, a SIMD variant selected at runtime.
//
// Contract: every backend is bit-identical to the scalar reference. The
// kernels use only IEEE add/sub/mul/div/sqrt/max applied per element in
// the same order, and the kernel translation units are built with FMA
// contraction disabled, so this holds exactly (equivalence tests assert
// bitwise equality).
namespace relheat::kernels {

struct Backend {
  const char* name;

  // out[i] = (b[i] - a[i]) * k
  void (*diff_scaled)(double* out, const double* a, const double* b, double k,
                      std::size_t n);
  // out[i] += (b[i] - a[i]) * k
  void (*diff_scaled_add)(double* out, const double* a, const double* b,
                          double k, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double* y, const double* x, double a, std::size_t n);
  // out[i] = (um[i] - 2*uc[i] + up[i]) * k
  void (*stencil3)(double* out, const double* um, const double* uc,
                   const double* up, double k, std::size_t n);
  // out[i] = (a[i] + b[i] - c[i] - d[i]) * k
  void (*avg4_scaled)(double* out, const double* a, const double* b,
                      const double* c, const double* d, double k,
                      std::size_t n);
  // Relativistic face flux over n faces. gt may be null (no transverse
  // gradient, 1D case). For each i:
  //   uf = 0.5*(ul[i] + ur[i]);  gn = (ur[i] - ul[i]) * inv_h;
  //   den = max(sqrt(uf^2 + inv_c2*(gn^2 + gt^2)), eps);
  //   f[i] = uf * gn / den;
  void (*flux_faces)(double* f, const double* ul, const double* ur,
                     const double* gt, double inv_h, double inv_c2, double eps,
                     std::size_t n);
};

const Backend& scalar_backend();
// Returns null when AVX2 is unavailable (at build time or on this CPU).
const Backend* avx2_backend();

// The active backend: best available, unless overridden by select() or by
// the RELHEAT_KERNELS environment variable ("scalar" or "avx2").
const Backend& active();
void select(const std::string& name);
std::vector<std::string> available();

}  // namespace relheat::kernels
