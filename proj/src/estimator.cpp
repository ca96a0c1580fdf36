#include "uavmm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavmm/simd/kernels.hpp"

namespace uavmm {

void EstimatorConfig::validate() const {
  if ((z_psi != 0 && z_psi < 2) || (z_omega != 0 && z_omega < 2))
    throw std::invalid_argument("estimator grid needs at least 2 points per axis");
  if (n_pk < 1) throw std::invalid_argument("estimator n_pk must be at least 1");
  if (step && !(*step > 0.0)) throw std::invalid_argument("estimator step must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("estimator epsilon must be positive");
}

namespace {

struct Eval {
  double g = 0.0;
  std::array<double, 2> grad{0.0, 0.0};
  std::uint64_t macs = 0;
};

void check_y(const SensingMatrix& m, std::span<const cd> y) {
  if (y.size() != m.n_columns())
    throw std::invalid_argument("measurement count does not match the sensing matrix");
}

void ramp(std::span<const cd> v, bool centered, std::span<cd> out) {
  const double off = centered ? (static_cast<double>(v.size()) - 1.0) / 2.0 : 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    out[k] = v[k] * cd(0.0, M_PI * (static_cast<double>(k) - off));
}

// g and optionally its gradient. With c_n = m_n^H b, s = c^H y, q = ||c||^2:
//   g = |s|^2 / q,  dg = 2 Re(conj(s) ds) / q - |s|^2 * 2 Re(c^H dc) / q^2.
Eval evaluate(double psi, double omega, const SensingMatrix& m, std::span<const cd> y,
              bool want_grad, bool centered) {
  const std::size_t nc = m.n_columns();
  const std::size_t nx = m.geometry().n_x;
  const std::size_t ny = m.geometry().n_second;
  const auto& k = simd::kernels();
  Eval e;

  CVector vx = steering(psi, nx, centered);
  CVector vy = steering(omega, ny, centered);
  CVector zx(nx), zy(ny);
  if (want_grad) {
    ramp(vx, centered, zx);
    ramp(vy, centered, zy);
  }

  CVector c(nc), dp(nc), dw(nc);
  if (m.has_factors()) {
    for (std::size_t n = 0; n < nc; ++n) {
      const cd* fx = m.x_factor(n).data();
      const cd* fy = m.y_factor(n).data();
      const cd ax = k.dot_conj(fx, vx.data(), nx);
      const cd ay = k.dot_conj(fy, vy.data(), ny);
      c[n] = ax * ay;
      if (want_grad) {
        dp[n] = k.dot_conj(fx, zx.data(), nx) * ay;
        dw[n] = ax * k.dot_conj(fy, zy.data(), ny);
      }
    }
    e.macs = nc * (nx + ny) * (want_grad ? 2 : 1);
  } else {
    const std::size_t nu = nx * ny;
    CVector b(nu);
    k.kron(vx.data(), nx, vy.data(), ny, b.data());
    if (want_grad) {
      CVector bp(nu), bw(nu);
      k.kron(zx.data(), nx, vy.data(), ny, bp.data());
      k.kron(vx.data(), nx, zy.data(), ny, bw.data());
      for (std::size_t n = 0; n < nc; ++n)
        k.dot_conj3(m.column(n).data(), b.data(), bp.data(), bw.data(), nu, &c[n], &dp[n], &dw[n]);
      e.macs = 3 * nc * nu;
    } else {
      for (std::size_t n = 0; n < nc; ++n) c[n] = k.dot_conj(m.column(n).data(), b.data(), nu);
      e.macs = nc * nu;
    }
  }

  const cd s = k.dot_conj(c.data(), y.data(), nc);
  const double q = k.norm_sq(c.data(), nc);
  const double floor = 1e-6 * std::sqrt(static_cast<double>(nc));
  if (!(std::sqrt(q) >= floor)) return e;
  const double s2 = std::norm(s);
  e.g = s2 / q;
  if (want_grad) {
    const std::array<CVector*, 2> d{&dp, &dw};
    for (int a = 0; a < 2; ++a) {
      const cd ds = k.dot_conj(d[a]->data(), y.data(), nc);
      const double dq = 2.0 * k.dot_conj(c.data(), d[a]->data(), nc).real();
      e.grad[a] = 2.0 * (std::conj(s) * ds).real() / q - s2 * dq / (q * q);
    }
  }
  return e;
}

std::size_t default_z(const AxisRange& r, std::size_t n_axis) {
  const double z = std::ceil(2.0 * r.width() * static_cast<double>(n_axis) - 1e-9);
  return std::max<std::size_t>(2, static_cast<std::size_t>(z));
}

double default_step(const SensingMatrix& m, std::span<const cd> y) {
  const double y2 = simd::norm_sq(y);
  const double n = static_cast<double>(m.geometry().n_x * m.geometry().n_second);
  return 1.0 / (M_PI * M_PI * n * y2);
}

SensingRange domain_of(const SensingMatrix& m, const EstimatorConfig& cfg) {
  return cfg.domain ? *cfg.domain : m.declared_range();
}

std::vector<Candidate> pick_maxima(const GridResponse& grid, const SensingRange& domain,
                                   std::span<const cd> y, std::size_t n_pk,
                                   std::uint64_t* macs) {
  const std::size_t zp = grid.psi.size();
  const std::size_t zw = grid.omega.size();
  const std::size_t nc = grid.n_columns;
  const double floor = 1e-6 * std::sqrt(static_cast<double>(nc));
  const auto& k = simd::kernels();
  std::vector<double> g(zp * zw, 0.0);
  for (std::size_t i = 0; i < zp; ++i)
    for (std::size_t j = 0; j < zw; ++j) {
      const auto c = grid.at(i, j);
      const double q = k.norm_sq(c.data(), nc);
      if (std::sqrt(q) >= floor) g[i * zw + j] = std::norm(k.dot_conj(c.data(), y.data(), nc)) / q;
    }
  if (macs) *macs += 2 * zp * zw * nc;

  const bool wrap_p = domain.psi.is_full();
  const bool wrap_w = domain.omega.is_full();
  auto neighbor = [](std::size_t i, int d, std::size_t z, bool wrap, std::size_t* out) {
    const long idx = static_cast<long>(i) + d;
    if (idx >= 0 && idx < static_cast<long>(z)) {
      *out = static_cast<std::size_t>(idx);
      return true;
    }
    if (!wrap) return false;
    *out = static_cast<std::size_t>((idx + static_cast<long>(z)) % static_cast<long>(z));
    return true;
  };

  std::vector<Candidate> maxima;
  for (std::size_t i = 0; i < zp; ++i)
    for (std::size_t j = 0; j < zw; ++j) {
      const double v = g[i * zw + j];
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1 && is_max; ++dj) {
          if (di == 0 && dj == 0) continue;
          std::size_t ni, nj;
          if (!neighbor(i, di, zp, wrap_p, &ni) || !neighbor(j, dj, zw, wrap_w, &nj)) continue;
          if (g[ni * zw + nj] > v) is_max = false;
        }
      if (is_max) maxima.push_back({AoaPair(grid.psi[i], grid.omega[j]), v});
    }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  if (maxima.size() > n_pk) maxima.resize(n_pk);
  return maxima;
}

RefinedPoint ascend(const Candidate& start, const SensingMatrix& m, std::span<const cd> y,
                    const EstimatorConfig& cfg, const SensingRange& domain, std::uint64_t* macs) {
  RefinedPoint best{start.aoa, start.value, 0, false};
  if (cfg.max_iterations == 0) return best;
  const double step0 = cfg.step ? *cfg.step : default_step(m, y);
  if (!std::isfinite(step0)) return best;  // y == 0: g vanishes everywhere

  double step = step0;
  double x_psi = start.aoa.psi, x_omega = start.aoa.omega;
  Eval cur = evaluate(x_psi, x_omega, m, y, true, false);
  if (macs) *macs += cur.macs;
  best.value = std::max(best.value, cur.g);
  int decreases = 0;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const double np = domain.psi.clamp(wrap_add(x_psi, step * cur.grad[0]));
    const double nw = domain.omega.clamp(wrap_add(x_omega, step * cur.grad[1]));
    const Eval next = evaluate(np, nw, m, y, true, false);
    if (macs) *macs += next.macs;
    best.iterations = it + 1;
    const double dp = wrap_sub(np, x_psi), dw = wrap_sub(nw, x_omega);
    if (next.g < cur.g) {
      if (++decreases == 5) {
        step *= 0.5;
        decreases = 0;
        if (step < 1e-6 * step0) break;
      }
    } else {
      decreases = 0;
    }
    x_psi = np;
    x_omega = nw;
    cur = next;
    if (cur.g > best.value) {
      best.value = cur.g;
      best.aoa = AoaPair(x_psi, x_omega);
    }
    if (dp * dp + dw * dw <= cfg.epsilon) {
      best.converged = true;
      break;
    }
  }
  return best;
}

AoaEstimate select_best(std::vector<Candidate> cands, const SensingMatrix& m, std::span<const cd> y,
                        const EstimatorConfig& cfg, const SensingRange& domain) {
  AoaEstimate out;
  out.candidates = std::move(cands);
  bool first = true;
  for (const Candidate& c : out.candidates) {
    RefinedPoint r = ascend(c, m, y, cfg, domain, &out.ops.fine);
    out.iterations += r.iterations;
    if (first || r.value > out.value) {
      out.aoa = r.aoa;
      out.value = r.value;
      first = false;
    }
    out.refined.push_back(r);
  }
  return out;
}

}  // namespace

double objective(double psi, double omega, const SensingMatrix& m, std::span<const cd> y) {
  check_y(m, y);
  return evaluate(psi, omega, m, y, false, true).g;
}

double objective(AoaPair aoa, const SensingMatrix& m, std::span<const cd> y) {
  return objective(aoa.psi, aoa.omega, m, y);
}

std::array<double, 2> objective_gradient(double psi, double omega, const SensingMatrix& m,
                                         std::span<const cd> y) {
  check_y(m, y);
  return evaluate(psi, omega, m, y, true, false).grad;
}

std::array<double, 2> objective_gradient_centered(double psi, double omega,
                                                  const SensingMatrix& m, std::span<const cd> y) {
  check_y(m, y);
  return evaluate(psi, omega, m, y, true, true).grad;
}

std::vector<Candidate> coarse_search(const SensingMatrix& m, std::span<const cd> y,
                                     const EstimatorConfig& cfg) {
  return MleEstimator(m, cfg).coarse(y);
}

RefinedPoint fine_search(const Candidate& start, const SensingMatrix& m, std::span<const cd> y,
                         const EstimatorConfig& cfg) {
  cfg.validate();
  check_y(m, y);
  return ascend(start, m, y, cfg, domain_of(m, cfg), nullptr);
}

AoaEstimate estimate_aoa(const SensingMatrix& m, std::span<const cd> y, const EstimatorConfig& cfg) {
  return MleEstimator(m, cfg).estimate(y);
}

AoaPair brute_force_oracle(const SensingMatrix& m, std::span<const cd> y, std::size_t z_psi,
                           std::size_t z_omega) {
  check_y(m, y);
  const auto psi = full_grid(z_psi);
  const auto omega = full_grid(z_omega);
  AoaPair best(psi[0], omega[0]);
  double best_g = -1.0;
  for (double p : psi)
    for (double w : omega) {
      // Values within rounding of the incumbent count as ties, which keep the
      // earlier point.
      const double g = objective(p, w, m, y);
      if (g > best_g + 1e-12 * std::abs(best_g)) {
        best_g = g;
        best = AoaPair(p, w);
      }
    }
  return best;
}

AoaPair brute_force_oracle(const SensingMatrix& m, std::span<const cd> y) {
  return brute_force_oracle(m, y, 8 * m.geometry().n_x, 8 * m.geometry().n_second);
}

MleEstimator::MleEstimator(SensingMatrix m, EstimatorConfig cfg)
    : m_(std::move(m)), cfg_(std::move(cfg)) {
  cfg_.validate();
  domain_ = domain_of(m_, cfg_);
  const std::size_t zp = cfg_.z_psi ? cfg_.z_psi : default_z(domain_.psi, m_.geometry().n_x);
  const std::size_t zw = cfg_.z_omega ? cfg_.z_omega : default_z(domain_.omega, m_.geometry().n_second);
  const auto psi = range_grid(domain_.psi, zp);
  const auto omega = range_grid(domain_.omega, zw);
  grid_ = grid_response(m_, psi, omega);
}

std::vector<Candidate> MleEstimator::coarse(std::span<const cd> y, std::uint64_t* macs) const {
  check_y(m_, y);
  return pick_maxima(grid_, domain_, y, cfg_.n_pk, macs);
}

AoaEstimate MleEstimator::estimate(std::span<const cd> y) const {
  std::uint64_t coarse_macs = grid_.complex_macs;
  auto cands = coarse(y, &coarse_macs);
  AoaEstimate out = select_best(std::move(cands), m_, y, cfg_, domain_);
  out.ops.coarse = coarse_macs;
  return out;
}

}  // namespace uavmm
