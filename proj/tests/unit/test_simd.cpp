#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "uavmm/simd/kernels.hpp"

using namespace uavmm;
using simd::cd;

TEST_CASE("every available kernel table matches the scalar reference") {
  const simd::KernelTable& ref = simd::scalar_kernels();
  Rng rng = make_stream(70, 0, StreamId::Test);
  for (const simd::KernelTable* t : simd::available_kernels()) {
    CAPTURE(t->name);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 64, 255, 256, 1000}) {
      const auto a = test::random_cvector(rng, n), b = test::random_cvector(rng, n);
      const auto c = test::random_cvector(rng, n), d = test::random_cvector(rng, n);
      const double tol = 1e-12 * (1.0 + static_cast<double>(n));
      REQUIRE(std::abs(t->dot_conj(a.data(), b.data(), n) - ref.dot_conj(a.data(), b.data(), n)) < tol);
      REQUIRE(std::abs(t->norm_sq(a.data(), n) - ref.norm_sq(a.data(), n)) < tol);
      cd r[3], s[3];
      t->dot_conj3(a.data(), b.data(), c.data(), d.data(), n, &r[0], &r[1], &r[2]);
      ref.dot_conj3(a.data(), b.data(), c.data(), d.data(), n, &s[0], &s[1], &s[2]);
      for (int k = 0; k < 3; ++k) REQUIRE(std::abs(r[k] - s[k]) < tol);
    }
    for (std::size_t nx : {1, 3, 4, 16})
      for (std::size_t ny : {1, 2, 5, 16}) {
        const auto x = test::random_cvector(rng, nx), y = test::random_cvector(rng, ny);
        std::vector<cd> o1(nx * ny), o2(nx * ny);
        t->kron(x.data(), nx, y.data(), ny, o1.data());
        ref.kron(x.data(), nx, y.data(), ny, o2.data());
        for (std::size_t k = 0; k < o1.size(); ++k) REQUIRE(std::abs(o1[k] - o2[k]) < 1e-14);
      }
  }
}

TEST_CASE("scalar reference against a direct loop") {
  const simd::KernelTable& ref = simd::scalar_kernels();
  Rng rng = make_stream(71, 0, StreamId::Test);
  const auto a = test::random_cvector(rng, 37), b = test::random_cvector(rng, 37);
  cd s = 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < 37; ++i) {
    s += std::conj(a[i]) * b[i];
    q += std::norm(a[i]);
  }
  CHECK(std::abs(ref.dot_conj(a.data(), b.data(), 37) - s) < 1e-12);
  CHECK(ref.norm_sq(a.data(), 37) == doctest::Approx(q));
}

TEST_CASE("kernel selection by name") {
  const std::string active(simd::kernels().name);
  CHECK(simd::select_kernels("scalar"));
  CHECK(simd::kernels().name == "scalar");
  CHECK_FALSE(simd::select_kernels("no-such-table"));
  CHECK(simd::select_kernels(active));
  CHECK(simd::available_kernels().front()->name == "scalar");
}
