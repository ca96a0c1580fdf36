#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "uavmm/sensing.hpp"
#include "uavmm/simd/kernels.hpp"

using namespace uavmm;

namespace {

const UpaGeometry kUav = UpaGeometry::uav(16, 16, test::wavelength_28ghz());

SensingSpec type1(std::size_t n, AoaPair c = {}) { return SensingSpec::partial(kUav, n, 4, 0.15, c); }
SensingSpec type2(std::size_t n, AoaPair c = {}) { return SensingSpec::partial(kUav, n, 2, 0.1, c); }

}  // namespace

TEST_CASE("declared ranges of the three reference configurations") {
  const SensingRange full = SensingSpec::fully_random(kUav, 6).declared_range();
  CHECK(full.psi.is_full());
  CHECK(full.psi.lo() == -1.0);
  CHECK(full.omega.hi() == 1.0);
  const SensingRange r1 = type1(6).declared_range();
  CHECK(std::abs(r1.psi.lo() + 0.4) < 1e-12);
  CHECK(std::abs(r1.omega.hi() - 0.4) < 1e-12);
  const SensingRange r2 = type2(6).declared_range();
  CHECK(std::abs(r2.psi.lo() + 0.225) < 1e-12);
  CHECK(std::abs(r2.psi.hi() - 0.225) < 1e-12);
  CHECK(r2.psi.width() == doctest::Approx(2 * (0.1 + 2.0 / 16.0)));
}

TEST_CASE("axis range wraps around the ends of the cosine axis") {
  const AxisRange r = AxisRange::make(0.95, 0.1);
  CHECK(r.contains(0.99));
  CHECK(r.contains(-0.97));
  CHECK_FALSE(r.contains(0.8));
  CHECK(r.clamp(-0.5) == doctest::Approx(-0.95));
  CHECK(r.clamp(0.5) == doctest::Approx(0.85));
  CHECK(r.clamp(0.9) == 0.9);
  CHECK(AxisRange::make(0.3, 1.2).is_full());
  CHECK_FALSE(AxisRange::make(0.0, 0.0).contains(0.0));
}

TEST_CASE("spec validation rejects indivisible partitions") {
  CHECK_THROWS(SensingSpec::partial(kUav, 6, 3, 0.1).validate());
  CHECK_THROWS(SensingSpec::partial(kUav, 0, 2, 0.1).validate());
  CHECK_THROWS(SensingSpec::partial(kUav, 6, 2, -0.1).validate());
  Rng rng = make_stream(30, 0, StreamId::Test);
  CHECK_THROWS(random_subarray_ula(rng, 16, 3, 0.0, 0.0));
  CHECK_THROWS(random_subarray_ula(rng, 16, 4, 0.2, 0.1));
  CHECK(SensingSpec::fully_random(kUav, 3).is_fully_random());
  CHECK_FALSE(type1(3).is_fully_random());
}

TEST_CASE("columns have unit norm and constant modulus") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_stream(seed, 0, StreamId::Test);
    for (const SensingSpec& s : {SensingSpec::fully_random(kUav, 8), type1(8), type2(8)}) {
      const SensingMatrix m = sensing_matrix(s, rng);
      REQUIRE(m.n_columns() == 8);
      for (std::size_t n = 0; n < m.n_columns(); ++n) {
        REQUIRE(std::abs(simd::norm_sq(m.column(n)) - 1.0) < 1e-12);
        for (const cd& z : m.column(n)) REQUIRE(std::abs(std::abs(z) - 1.0 / 16.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("columns are rebuilt bit-exactly from the logged draws") {
  Rng rng = make_stream(31, 0, StreamId::Test);
  const SensingMatrix m = sensing_matrix(type1(5, AoaPair(0.9, -0.3)), rng);
  REQUIRE(m.draws().size() == 5);
  for (std::size_t n = 0; n < 5; ++n) {
    const CVector x = subarray_ula(16, m.draws()[n][0]);
    const CVector y = subarray_ula(16, m.draws()[n][1]);
    CVector col(256);
    simd::kron(x, y, col);
    for (std::size_t k = 0; k < 256; ++k) REQUIRE(col[k] == m.column(n)[k]);
    for (double c : m.draws()[n][0].centers) {
      REQUIRE(c >= -1.0);
      REQUIRE(c < 1.0);
      REQUIRE(std::abs(wrap_sub(c, 0.9)) <= 0.15 + 1e-12);
    }
  }
}

TEST_CASE("prefix of a longer draw equals the shorter draw") {
  Rng a = make_stream(32, 0, StreamId::Test), b = make_stream(32, 0, StreamId::Test);
  const SensingMatrix big = sensing_matrix(type2(12), a);
  const SensingMatrix small = sensing_matrix(type2(5), b);
  const SensingMatrix pre = big.prefix(5);
  REQUIRE(pre.n_columns() == 5);
  for (std::size_t k = 0; k < small.data().size(); ++k) REQUIRE(pre.data()[k] == small.data()[k]);
  CHECK(pre.has_factors());
  CHECK(pre.spec()->n_measurements == 5);
}

TEST_CASE("limiting sub-array configurations") {
  Rng rng = make_stream(33, 0, StreamId::Test);
  const CVector fr = random_subarray_ula(rng, 16, 16, 0.0, 0.0);
  for (const cd& z : fr) CHECK(std::abs(z) == doctest::Approx(0.25));

  // One sub-array with a fixed center is a plain beam up to a global phase.
  const CVector beam = random_subarray_ula(rng, 16, 1, 0.4, 0.4);
  const CVector ref = steering(0.4, 16, false);
  const cd g = beam[0] / ref[0];
  CHECK(std::abs(g) == doctest::Approx(0.25));
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(beam[k] - g * ref[k]) < 1e-14);
}

TEST_CASE("fully random element phases are uniform") {
  Rng rng = make_stream(34, 0, StreamId::Test);
  const int bins = 20;
  std::vector<double> count(bins, 0.0);
  const std::size_t samples = 100000;
  for (std::size_t i = 0; i < samples / 16; ++i)
    for (const cd& z : random_subarray_ula(rng, 16, 16, 0.0, 0.0)) {
      const double u = (std::arg(z) + M_PI) / (2 * M_PI);
      count[std::min(bins - 1, static_cast<int>(u * bins))] += 1.0;
    }
  const double expect = static_cast<double>(samples) / bins;
  double chi2 = 0.0;
  for (double c : count) chi2 += (c - expect) * (c - expect) / expect;
  // Chi-square, 19 degrees of freedom, upper 1% point.
  CHECK(chi2 < 36.1909);
}

TEST_CASE("grid response: factored and generic paths agree") {
  Rng rng = make_stream(35, 0, StreamId::Test);
  const UpaGeometry g = UpaGeometry::uav(6, 4, 0.01);
  const SensingMatrix f = sensing_matrix(SensingSpec::partial(g, 5, 2, 0.2, AoaPair(0.1, -0.2)), rng);
  const SensingMatrix c = SensingMatrix::from_columns(g, CVector(f.data().begin(), f.data().end()));
  const auto psi = full_grid(9), omega = range_grid(AxisRange::make(0.5, 0.3), 7);
  const GridResponse a = grid_response(f, psi, omega);
  const GridResponse b = grid_response(c, psi, omega);
  REQUIRE(a.c.size() == b.c.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < omega.size(); ++j) {
      const CVector bvec = array_response(psi[i], omega[j], g);
      for (std::size_t n = 0; n < 5; ++n) {
        const cd direct = simd::dot_conj(f.column(n), bvec);
        REQUIRE(std::abs(a.at(i, j)[n] - direct) < 1e-12);
        REQUIRE(std::abs(b.at(i, j)[n] - direct) < 1e-12);
      }
    }
}

TEST_CASE("beamspace map of a single pure beam peaks at the beam") {
  const UpaGeometry g = UpaGeometry::uav(8, 8, 0.01);
  CVector col = array_response(0.25, -0.5, g);
  for (cd& z : col) z /= 8.0;
  const SensingMatrix m = SensingMatrix::from_columns(g, col);
  const BeamspaceMap map = beamspace_map(m, 32, 32);
  double mx = 0.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < 32; ++i)
    for (std::size_t j = 0; j < 32; ++j)
      if (map.at(i, j) > mx) {
        mx = map.at(i, j);
        bi = i;
        bj = j;
      }
  CHECK(mx == 1.0);
  CHECK(map.psi[bi] == doctest::Approx(0.25));
  CHECK(map.omega[bj] == doctest::Approx(-0.5));
  CHECK_THROWS(beamspace_map(m, 1, 32));
}

TEST_CASE("energy fraction edge cases and concentration") {
  Rng rng = make_stream(36, 0, StreamId::Test);
  const SensingMatrix m = sensing_matrix(type2(6), rng);
  CHECK(range_energy_fraction(m, SensingRange::full()) == doctest::Approx(1.0));
  CHECK(range_energy_fraction(m, {AxisRange::make(0.0, 0.0), AxisRange::make(0.0, 0.0)}) == 0.0);

  // Per-axis captured energy of the partially random matrices inside their
  // declared interval, averaged over seeds.
  for (const SensingSpec& s : {type1(6), type2(6)}) {
    double px = 0.0, box = 0.0;
    for (int k = 0; k < 50; ++k) {
      Rng r = make_stream(37, k, StreamId::Test);
      const SensingMatrix sm = sensing_matrix(s, r);
      const EnergyFractions f = range_energy_fractions(sm, sm.declared_range());
      px += (f.psi + f.omega) / 2;
      box += f.box;
    }
    CHECK(px / 50 > 0.85);
    CHECK(box / 50 < px / 50);
  }
}

TEST_CASE("fully random matrix is close to omnidirectional") {
  for (int seed = 0; seed < 5; ++seed) {
    Rng rng = make_stream(38, seed, StreamId::Test);
    const SensingMatrix m = sensing_matrix(SensingSpec::fully_random(kUav, 64), rng);
    for (const SensingRange half : {SensingRange{AxisRange::make(-0.5, 0.5), AxisRange::full()},
                                    SensingRange{AxisRange::make(0.5, 0.5), AxisRange::full()},
                                    SensingRange{AxisRange::full(), AxisRange::make(-0.5, 0.5)},
                                    SensingRange{AxisRange::full(), AxisRange::make(0.5, 0.5)}}) {
      CHECK(range_energy_fraction(m, half) <= 0.65);
    }
  }
}

TEST_CASE("shifting the center shifts the captured energy") {
  const AoaPair c(0.3, -0.2);
  double a = 0.0, b = 0.0;
  const int seeds = 100;
  for (int k = 0; k < seeds; ++k) {
    Rng r0 = make_stream(39, k, StreamId::Test), r1 = make_stream(40, k, StreamId::Test);
    const SensingMatrix m0 = sensing_matrix(type2(6), r0);
    const SensingMatrix m1 = sensing_matrix(type2(6, c), r1);
    a += range_energy_fraction(m0, m0.declared_range());
    b += range_energy_fraction(m1, m1.declared_range());
  }
  CHECK(std::abs(a - b) / a < 0.05);
}
