// AVX2 kernel variants (4 doubles per lane). Compiled with -mavx2 and with
// FMA contraction off: vaddpd/vsubpd/vmulpd/vdivpd/vsqrtpd/vmaxpd are all
// correctly rounded, so every element matches the scalar reference bitwise.

#include "relheat/kernels.hpp"

#ifdef RELHEAT_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace relheat::kernels {
namespace {

void diff_scaled(double* out, const double* a, const double* b, double k,
                 std::size_t n) {
  const __m256d vk = _mm256_set1_pd(k);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(vb, va), vk));
  }
  for (; i < n; ++i) out[i] = (b[i] - a[i]) * k;
}

void diff_scaled_add(double* out, const double* a, const double* b, double k,
                     std::size_t n) {
  const __m256d vk = _mm256_set1_pd(k);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d vo = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(
        out + i,
        _mm256_add_pd(vo, _mm256_mul_pd(_mm256_sub_pd(vb, va), vk)));
  }
  for (; i < n; ++i) out[i] += (b[i] - a[i]) * k;
}

void axpy(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void stencil3(double* out, const double* um, const double* uc,
              const double* up, double k, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(k);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vm = _mm256_loadu_pd(um + i);
    const __m256d vc = _mm256_loadu_pd(uc + i);
    const __m256d vp = _mm256_loadu_pd(up + i);
    const __m256d s = _mm256_add_pd(_mm256_sub_pd(vm, _mm256_mul_pd(two, vc)), vp);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, vk));
  }
  for (; i < n; ++i) out[i] = (um[i] - 2.0 * uc[i] + up[i]) * k;
}

void avg4_scaled(double* out, const double* a, const double* b,
                 const double* c, const double* d, double k, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(k);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vd = _mm256_loadu_pd(d + i);
    const __m256d s =
        _mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(va, vb), vc), vd);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, vk));
  }
  for (; i < n; ++i) out[i] = (a[i] + b[i] - c[i] - d[i]) * k;
}

// Matches the scalar evaluation order exactly:
//   uf*uf + inv_c2*(gn*gn [+ gt*gt]) inside the sqrt, then max with eps.
void flux_faces(double* f, const double* ul, const double* ur,
                const double* gt, double inv_h, double inv_c2, double eps,
                std::size_t n) {
  const __m256d vhalf = _mm256_set1_pd(0.5);
  const __m256d vih = _mm256_set1_pd(inv_h);
  const __m256d vic2 = _mm256_set1_pd(inv_c2);
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vl = _mm256_loadu_pd(ul + i);
    const __m256d vr = _mm256_loadu_pd(ur + i);
    const __m256d uf = _mm256_mul_pd(vhalf, _mm256_add_pd(vl, vr));
    const __m256d gn = _mm256_mul_pd(_mm256_sub_pd(vr, vl), vih);
    __m256d g2 = _mm256_mul_pd(gn, gn);
    if (gt != nullptr) {
      const __m256d vt = _mm256_loadu_pd(gt + i);
      g2 = _mm256_add_pd(g2, _mm256_mul_pd(vt, vt));
    }
    const __m256d den2 = _mm256_add_pd(_mm256_mul_pd(uf, uf), _mm256_mul_pd(vic2, g2));
    const __m256d den = _mm256_max_pd(_mm256_sqrt_pd(den2), veps);
    _mm256_storeu_pd(f + i, _mm256_div_pd(_mm256_mul_pd(uf, gn), den));
  }
  for (; i < n; ++i) {
    const double uf = 0.5 * (ul[i] + ur[i]);
    const double gn = (ur[i] - ul[i]) * inv_h;
    const double g2 = gt ? gn * gn + gt[i] * gt[i] : gn * gn;
    const double den = std::max(std::sqrt(uf * uf + inv_c2 * g2), eps);
    f[i] = uf * gn / den;
  }
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend = {
      "avx2",     diff_scaled, diff_scaled_add, axpy,
      stencil3,   avg4_scaled, flux_faces,
  };
  return &backend;
}

}  // namespace relheat::kernels

#else

namespace relheat::kernels {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace relheat::kernels

#endif  // RELHEAT_HAVE_AVX2
