// Scalar reference kernels. These define the semantics every SIMD backend
// must reproduce bit-for-bit; keep them free of algebraic rewrites.

#include <algorithm>
#include <cmath>

#include "relheat/kernels.hpp"

namespace relheat::kernels {
namespace {

void diff_scaled(double* out, const double* a, const double* b, double k,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (b[i] - a[i]) * k;
}

void diff_scaled_add(double* out, const double* a, const double* b, double k,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += (b[i] - a[i]) * k;
}

void axpy(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void stencil3(double* out, const double* um, const double* uc,
              const double* up, double k, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (um[i] - 2.0 * uc[i] + up[i]) * k;
}

void avg4_scaled(double* out, const double* a, const double* b,
                 const double* c, const double* d, double k, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (a[i] + b[i] - c[i] - d[i]) * k;
}

void flux_faces(double* f, const double* ul, const double* ur,
                const double* gt, double inv_h, double inv_c2, double eps,
                std::size_t n) {
  if (gt == nullptr) {
    for (std::size_t i = 0; i < n; ++i) {
      const double uf = 0.5 * (ul[i] + ur[i]);
      const double gn = (ur[i] - ul[i]) * inv_h;
      const double den =
          std::max(std::sqrt(uf * uf + inv_c2 * (gn * gn)), eps);
      f[i] = uf * gn / den;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double uf = 0.5 * (ul[i] + ur[i]);
      const double gn = (ur[i] - ul[i]) * inv_h;
      const double den = std::max(
          std::sqrt(uf * uf + inv_c2 * (gn * gn + gt[i] * gt[i])), eps);
      f[i] = uf * gn / den;
    }
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend = {
      "scalar",   diff_scaled, diff_scaled_add, axpy,
      stencil3,   avg4_scaled, flux_faces,
  };
  return backend;
}

}  // namespace relheat::kernels
