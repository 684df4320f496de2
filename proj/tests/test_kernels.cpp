#include <cstring>
#include <random>
#include <vector>

#include <doctest.h>

#include "relheat/kernels.hpp"

using namespace relheat;

namespace {

std::vector<double> random_array(std::mt19937_64& rng, std::size_t n,
                                 double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = uni(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernel semantics") {
  const auto& k = kernels::scalar_backend();
  std::vector<double> a{1.0, 2.0, 3.0}, b{2.0, 4.0, 7.0}, out(3);
  k.diff_scaled(out.data(), a.data(), b.data(), 10.0, 3);
  CHECK(out == std::vector<double>{10.0, 20.0, 40.0});
  k.diff_scaled_add(out.data(), a.data(), b.data(), 1.0, 3);
  CHECK(out == std::vector<double>{11.0, 22.0, 44.0});
  k.axpy(out.data(), a.data(), 2.0, 3);
  CHECK(out == std::vector<double>{13.0, 26.0, 50.0});

  std::vector<double> um{0.0, 1.0}, uc{1.0, 2.0}, up{4.0, 5.0}, s(2);
  k.stencil3(s.data(), um.data(), uc.data(), up.data(), 0.5, 2);
  CHECK(s == std::vector<double>{1.0, 1.0});

  std::vector<double> c{1.0}, d{2.0}, e{3.0}, f{4.0}, g(1);
  k.avg4_scaled(g.data(), c.data(), d.data(), e.data(), f.data(), 0.25, 1);
  CHECK(g[0] == doctest::Approx(-1.0));
}

TEST_CASE("flux kernel handles vacuum and huge gradients") {
  const auto& k = kernels::scalar_backend();
  // u = 0 next to u = 0: the eps floor avoids 0/0 and yields exactly zero
  std::vector<double> ul{0.0, 0.0, 3.0, 2.0};
  std::vector<double> ur{0.0, 1.0, 3.0, 2.0};
  std::vector<double> f(4);
  k.flux_faces(f.data(), ul.data(), ur.data(), nullptr, 1.0, 1.0, 1e-300, 4);
  CHECK(f[0] == 0.0);
  CHECK(f[1] > 0.0);     // flux into the vacuum cell
  CHECK(f[2] == 0.0);    // no gradient
  CHECK(f[3] == 0.0);

  // |f| <= c * u_face even for enormous gradients
  std::vector<double> hl{2.0}, hr{2.0 + 1e12}, hf(1);
  k.flux_faces(hf.data(), hl.data(), hr.data(), nullptr, 1.0, 1.0, 1e-300, 1);
  CHECK(std::abs(hf[0]) <= 0.5 * (hl[0] + hr[0]) + 1e-9);
}

TEST_CASE("avx2 variants are bit-identical to the scalar reference") {
  const kernels::Backend* simd = kernels::avx2_backend();
  if (!simd) {
    MESSAGE("AVX2 unavailable on this host; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar_backend();
  std::mt19937_64 rng(20240901u);

  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 17u, 64u, 67u, 513u}) {
    auto a = random_array(rng, n, -3.0, 3.0);
    auto b = random_array(rng, n, -3.0, 3.0);
    auto c = random_array(rng, n, -3.0, 3.0);
    auto d = random_array(rng, n, -3.0, 3.0);

    std::vector<double> r1(n), r2(n);
    ref.diff_scaled(r1.data(), a.data(), b.data(), 3.7, n);
    simd->diff_scaled(r2.data(), a.data(), b.data(), 3.7, n);
    CHECK(bitwise_equal(r1, r2));

    r1 = c;
    r2 = c;
    ref.diff_scaled_add(r1.data(), a.data(), b.data(), -1.3, n);
    simd->diff_scaled_add(r2.data(), a.data(), b.data(), -1.3, n);
    CHECK(bitwise_equal(r1, r2));

    r1 = c;
    r2 = c;
    ref.axpy(r1.data(), a.data(), 0.779, n);
    simd->axpy(r2.data(), a.data(), 0.779, n);
    CHECK(bitwise_equal(r1, r2));

    ref.stencil3(r1.data(), a.data(), b.data(), c.data(), 11.17, n);
    simd->stencil3(r2.data(), a.data(), b.data(), c.data(), 11.17, n);
    CHECK(bitwise_equal(r1, r2));

    ref.avg4_scaled(r1.data(), a.data(), b.data(), c.data(), d.data(), 0.25, n);
    simd->avg4_scaled(r2.data(), a.data(), b.data(), c.data(), d.data(), 0.25, n);
    CHECK(bitwise_equal(r1, r2));
  }
}

TEST_CASE("flux kernel equivalence across densities, gradients, vacuum") {
  const kernels::Backend* simd = kernels::avx2_backend();
  if (!simd) return;
  const auto& ref = kernels::scalar_backend();
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> mag(-9.0, 9.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rep * 13 % 97;
    std::vector<double> ul(n), ur(n), gt(n);
    for (std::size_t i = 0; i < n; ++i) {
      ul[i] = uni(rng) < 0.2 ? 0.0 : std::pow(10.0, mag(rng) * 0.3);
      ur[i] = uni(rng) < 0.2 ? 0.0 : std::pow(10.0, mag(rng) * 0.3);
      gt[i] = uni(rng) < 0.3 ? 0.0 : std::pow(10.0, mag(rng));
    }
    std::vector<double> f1(n), f2(n);
    const double inv_h = 128.0, inv_c2 = 0.25, eps = 1e-300;
    ref.flux_faces(f1.data(), ul.data(), ur.data(), nullptr, inv_h, inv_c2,
                   eps, n);
    simd->flux_faces(f2.data(), ul.data(), ur.data(), nullptr, inv_h, inv_c2,
                     eps, n);
    CHECK(bitwise_equal(f1, f2));
    ref.flux_faces(f1.data(), ul.data(), ur.data(), gt.data(), inv_h, inv_c2,
                   eps, n);
    simd->flux_faces(f2.data(), ul.data(), ur.data(), gt.data(), inv_h,
                     inv_c2, eps, n);
    CHECK(bitwise_equal(f1, f2));
  }
}

TEST_CASE("backend selection") {
  CHECK_THROWS(kernels::select("neon"));
  kernels::select("scalar");
  CHECK(std::string(kernels::active().name) == "scalar");
  const auto names = kernels::available();
  CHECK(names.front() == "scalar");
  if (kernels::avx2_backend()) {
    kernels::select("avx2");
    CHECK(std::string(kernels::active().name) == "avx2");
    kernels::select("scalar");
  }
}
