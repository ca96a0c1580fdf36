#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "uavmm/channel.hpp"
#include "uavmm/error.hpp"
#include "uavmm/simd/kernels.hpp"

using namespace uavmm;

namespace {

const double kLam = test::wavelength_28ghz();

}  // namespace

TEST_CASE("rank-one channel matches the per-element exact channel in the far field") {
  const UpaGeometry bs = UpaGeometry::bs(8, 8, kLam), uav = UpaGeometry::uav(8, 8, kLam);
  Rng rng = make_stream(10, 0, StreamId::Test);
  for (int i = 0; i < 10; ++i) {
    const Position3 p{uniform(rng, -150, 150), uniform(rng, -150, 150), uniform(rng, 50, 150)};
    const Attitude att(uniform(rng, -M_PI, M_PI), uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2));
    const LosChannel ch = los_channel(p, att, bs, uav);
    const ComplexMatrix h = exact_channel_matrix(p, att, bs, uav);
    double worst = 0.0;
    for (std::size_t k = 0; k < h.rows; ++k)
      for (std::size_t c = 0; c < h.cols; ++c) {
        const cd model = ch.coeff * ch.uav_response[k] * std::conj(ch.bs_response[c]);
        worst = std::max(worst, std::abs(model - h(k, c)) / std::abs(ch.coeff));
      }
    // Residual is the second-order (Fresnel) phase term: the path length error
    // is at most r^2 / (2d) with r the largest offset sum of the two arrays.
    double ra = 0.0, rb = 0.0;
    for (const Position3& a : bs_antenna_offsets(bs)) ra = std::max(ra, norm(a));
    for (const Position3& b : uav_antenna_offsets(uav)) rb = std::max(rb, norm(b));
    const double bound = M_PI * (ra + rb) * (ra + rb) / (kLam * ch.distance);
    CHECK(worst < bound);
    CHECK(worst > 0.0);
  }
}

TEST_CASE("channel coefficient and stored angles") {
  const UpaGeometry bs = UpaGeometry::bs(16, 16, kLam), uav = UpaGeometry::uav(16, 16, kLam);
  const LosChannel ch = los_channel({-100.0, 100.0, 50.0}, Attitude(), bs, uav);
  CHECK(ch.distance == doctest::Approx(150.0));
  CHECK(std::abs(ch.coeff) == doctest::Approx(kLam / (4.0 * M_PI * 150.0)));
  CHECK(ch.aoa_bs.psi == doctest::Approx(2.0 / 3.0));
  CHECK(ch.aoa_uav.omega == doctest::Approx(-2.0 / 3.0));
  CHECK_THROWS(los_channel({3.0, 3.0, 3.0}, Attitude(), bs, uav));
  CHECK_THROWS(los_channel({-100.0, 100.0, 50.0}, Attitude(), uav, bs));
}

TEST_CASE("beamforming gain bounds and the path-loss anchor") {
  const UpaGeometry bs = UpaGeometry::bs(16, 16, kLam), uav = UpaGeometry::uav(16, 16, kLam);
  const LosChannel ch = los_channel({-100.0, 100.0, 50.0}, Attitude(), bs, uav);
  const Beamformer f = beamformer(ch.aoa_bs, bs, Side::Bs);
  const Beamformer m = beamformer(ch.aoa_uav, uav, Side::Uav);
  CHECK(simd::norm_sq(f.weights) == doctest::Approx(1.0).epsilon(1e-12));
  const double g = beamforming_gain(m, ch, f);
  CHECK(g == doctest::Approx(256.0 * 256.0).epsilon(1e-9));
  // 20 log10(4 pi d / lambda) - 10 log10(65536)
  const double expect = 20.0 * std::log10(4.0 * M_PI * 150.0 / kLam) - 10.0 * std::log10(65536.0);
  CHECK(path_loss_db(g, kLam, 150.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(path_loss_db(g, kLam, 150.0) == doctest::Approx(56.74).epsilon(1e-4));
  CHECK(std::isinf(path_loss_db(0.0, kLam, 150.0)));

  Rng rng = make_stream(11, 0, StreamId::Test);
  for (int i = 0; i < 200; ++i) {
    const Beamformer mr = beamformer(AoaPair(uniform(rng, -1, 1), uniform(rng, -1, 1)), uav, Side::Uav);
    REQUIRE(beamforming_gain(mr, ch, f) <= 65536.0 * (1 + 1e-12));
  }
}

TEST_CASE("effective coefficient: closed form equals the inner product") {
  const UpaGeometry bs = UpaGeometry::bs(16, 16, kLam), uav = UpaGeometry::uav(16, 16, kLam);
  Rng rng = make_stream(12, 0, StreamId::Test);
  for (int i = 0; i < 300; ++i) {
    const Position3 p{uniform(rng, -150, 150), uniform(rng, -150, 150), uniform(rng, 20, 150)};
    const LosChannel ch = los_channel(p, Attitude(), bs, uav);
    AoaPair point(uniform(rng, -1, 1), uniform(rng, -1, 1));
    if (i % 3 == 0) point = ch.aoa_bs;  // removable singularity of the kernel
    const cd a = effective_coeff(ch, point);
    const cd b = effective_coeff_closed_form(ch, point);
    REQUIRE(std::abs(a - b) <= 1e-9 * std::abs(ch.coeff) * 16.0);
  }
}

TEST_CASE("dirichlet ratio is continuous at its removable points") {
  for (std::size_t n : {1, 4, 16}) {
    CHECK(dirichlet_ratio(0.0, n) == doctest::Approx(static_cast<double>(n)));
    CHECK(dirichlet_ratio(1e-12, n) == doctest::Approx(static_cast<double>(n)));
    CHECK(dirichlet_ratio(2.0, n) == doctest::Approx(dirichlet_ratio(2.0 - 1e-7, n)).epsilon(1e-5));
  }
}

TEST_CASE("measurements: noiseless value and noise statistics") {
  const UpaGeometry bs = UpaGeometry::bs(4, 4, kLam), uav = UpaGeometry::uav(4, 4, kLam);
  const LosChannel ch = los_channel({30.0, -40.0, 20.0}, Attitude(0.2, 0.0, 0.0), bs, uav);
  const Beamformer f = beamformer(ch.aoa_bs, bs, Side::Bs);
  const Beamformer m = beamformer(AoaPair(0.1, 0.2), uav, Side::Uav);
  Rng rng = make_stream(13, 0, StreamId::Test);
  const cd clean = measure(ch, f, m, 2.0, 0.0, rng);
  const cd expect = std::sqrt(2.0) * ch.coeff * simd::dot_conj(m.weights, ch.uav_response) *
                    simd::dot_conj(ch.bs_response, f.weights);
  CHECK(std::abs(clean - expect) < 1e-15);

  const std::size_t n = 200000;
  cd sum = 0.0;
  double pow = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cd e = measure(ch, f, m, 0.0, 3.0, rng);
    sum += e;
    pow += std::norm(e);
  }
  CHECK(std::abs(sum / double(n)) < 0.02);
  CHECK(pow / double(n) == doctest::Approx(3.0).epsilon(0.02));

  // measure_columns reproduces measure column by column.
  CVector cols(m.weights.begin(), m.weights.end());
  cols.insert(cols.end(), f.weights.begin(), f.weights.begin() + 16);
  const CVector y = measure_columns(ch, f, cols, 2, 1.5, 0.0, rng);
  CHECK(std::abs(y[0] - measure(ch, f, m, 1.5, 0.0, rng)) < 1e-15);
  CHECK_THROWS(measure_columns(ch, f, cols, 3, 1.0, 0.0, rng));
}
