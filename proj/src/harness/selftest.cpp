#include "uavmm/harness/selftest.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "uavmm/channel.hpp"
#include "uavmm/estimator.hpp"
#include "uavmm/harness/codebook.hpp"
#include "uavmm/harness/scenario.hpp"
#include "uavmm/jitter.hpp"
#include "uavmm/simd/kernels.hpp"

namespace uavmm {

namespace {

struct Reporter {
  std::ostream& out;
  bool all = true;
  void check(const std::string& name, bool ok, double measured) {
    out << (ok ? "PASS " : "FAIL ") << name << " (" << measured << ")\n";
    all = all && ok;
  }
};

CVector random_vector(Rng& rng, std::size_t n) {
  CVector v(n);
  for (cd& z : v) z = complex_gaussian(rng, 1.0);
  return v;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  Reporter rep{out};
  Rng rng = make_stream(2024, 0, StreamId::Test);
  const double lam = kSpeedOfLight / 28e9;

  {
    // Every kernel table against the scalar reference.
    double worst = 0.0;
    for (const auto* t : simd::available_kernels()) {
      for (std::size_t n : {1, 3, 16, 37, 256}) {
        const CVector a = random_vector(rng, n), b = random_vector(rng, n);
        const cd ref = simd::scalar_kernels().dot_conj(a.data(), b.data(), n);
        worst = std::max(worst, std::abs(t->dot_conj(a.data(), b.data(), n) - ref) / (1.0 + std::abs(ref)));
      }
    }
    rep.check("simd kernels agree with scalar reference", worst < 1e-12, worst);
  }
  {
    const UpaGeometry g = UpaGeometry::uav(4, 5, lam);
    const Attitude att(0.3, -0.2, 0.1);
    const Direction dir = Direction::between({0, 0, 0}, {-30.0, 40.0, 20.0});
    const auto c = uav_cosines(dir.unit(), att);
    const CVector kr = array_response(c[0], c[1], g);
    const CVector ex = exact_array_response(uav_antenna_offsets(g), rotation_matrix(att), dir.unit(), lam);
    double err = 0.0;
    for (std::size_t k = 0; k < kr.size(); ++k) err = std::max(err, std::abs(kr[k] - ex[k]));
    rep.check("kronecker response matches per-element phases", err < 1e-9, err);
  }
  {
    const Scenario s = reference_scenario(1);
    const AoaDistribution d = aoa_distribution(s.desired, Direction::between({0, 0, 0}, s.p_uav),
                                               JitterModel::isotropic(0.05));
    const double err = std::max({std::abs(d.mean[0] - 0.6667), std::abs(d.stddev[0] - 0.0374),
                                 std::abs(d.cov[0][1] - 0.0011)});
    rep.check("reference scenario 1 statistics", err < 1.5e-4, err);
  }
  {
    const Scenario s = reference_scenario(2);
    const Direction dir = Direction::between({0, 0, 0}, s.p_uav);
    const Mat2x3 j = jacobian(s.desired, dir);
    const double h = 1e-6;
    double err = 0.0;
    for (int k = 0; k < 3; ++k) {
      double p[3] = {s.desired.yaw(), s.desired.pitch(), s.desired.roll()};
      double m[3] = {p[0], p[1], p[2]};
      p[k] += h;
      m[k] -= h;
      const auto up = uav_cosines(dir.unit(), Attitude(p[0], p[1], p[2]));
      const auto um = uav_cosines(dir.unit(), Attitude(m[0], m[1], m[2]));
      for (int r = 0; r < 2; ++r) err = std::max(err, std::abs((up[r] - um[r]) / (2 * h) - j[r][k]));
    }
    rep.check("jacobian matches finite differences", err < 1e-6, err);
  }
  {
    const UpaGeometry bs = UpaGeometry::bs(16, 16, lam), uav = UpaGeometry::uav(16, 16, lam);
    const LosChannel ch = los_channel({-100.0, 100.0, 50.0}, Attitude(), bs, uav);
    const AoaPair p(0.62, -0.30);
    const double err = std::abs(effective_coeff(ch, p) - effective_coeff_closed_form(ch, p)) /
                       std::abs(effective_coeff(ch, p));
    rep.check("effective coefficient closed form", err < 1e-9, err);
  }
  {
    const UpaGeometry g = UpaGeometry::uav(16, 16, lam);
    const SensingMatrix m = sensing_matrix(SensingSpec::fully_random(g, 36), rng);
    const AoaPair truth(0.31, -0.57);
    const CVector b = array_response(truth, g);
    CVector y(m.n_columns());
    for (std::size_t n = 0; n < y.size(); ++n) y[n] = cd(0.7, -0.2) * simd::dot_conj(m.column(n), b);
    for (cd& v : y) v += 0.05 * complex_gaussian(rng, 1.0);
    const double h = 1e-6, psi = 0.2, omega = -0.4;
    const auto g0 = objective_gradient(psi, omega, m, y);
    const double fd = (objective(psi + h, omega, m, y) - objective(psi - h, omega, m, y)) / (2 * h);
    const double err = std::abs(fd - g0[0]) / std::max(1e-12, std::abs(fd));
    rep.check("objective gradient matches finite differences", err < 1e-4, err);

    CVector clean(m.n_columns());
    for (std::size_t n = 0; n < clean.size(); ++n) clean[n] = simd::dot_conj(m.column(n), b);
    const AoaEstimate e = estimate_aoa(m, clean, {});
    const double se = wrapped_sq_error(e.aoa, truth);
    rep.check("noiseless recovery", se < 1e-6, se);

    Codebook cb = make_codebook(SensingSpec::partial(g, 4, 2, 0.1, AoaPair(0.2, 0.1)), 5);
    std::stringstream buf;
    write_codebook(buf, cb);
    const Codebook back = read_codebook(buf, lam);
    double diff = 0.0;
    for (std::size_t k = 0; k < cb.matrix.data().size(); ++k)
      diff = std::max(diff, std::abs(cb.matrix.data()[k] - back.matrix.data()[k]));
    rep.check("codebook round trip", diff == 0.0 && back.header.seed == 5, diff);
  }
  return rep.all;
}

}  // namespace uavmm
