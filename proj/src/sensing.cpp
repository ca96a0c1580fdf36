#include "uavmm/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uavmm/simd/kernels.hpp"

namespace uavmm {

AxisRange AxisRange::make(double center, double half) {
  if (!(half >= 0.0)) throw std::invalid_argument("range half-width must be non-negative");
  if (half >= 1.0) return full();
  return {wrap_cosine(center), half};
}

bool AxisRange::contains(double x) const {
  if (is_full()) return true;
  return std::abs(wrap_sub(x, center)) < half;
}

double AxisRange::clamp(double x) const {
  if (is_full()) return wrap_cosine(x);
  const double off = std::clamp(wrap_sub(x, center), -half, half);
  return wrap_add(center, off);
}

SensingSpec SensingSpec::fully_random(const UpaGeometry& geom, std::size_t n, AoaPair center) {
  SensingSpec s;
  s.n_measurements = n;
  s.n_a = {geom.n_x, geom.n_second};
  s.w = {0.0, 0.0};
  s.center = center;
  s.uav_geom = geom;
  return s;
}

SensingSpec SensingSpec::partial(const UpaGeometry& geom, std::size_t n, std::size_t n_a,
                                 double w, AoaPair center) {
  SensingSpec s;
  s.n_measurements = n;
  s.n_a = {n_a, n_a};
  s.w = {w, w};
  s.center = center;
  s.uav_geom = geom;
  return s;
}

bool SensingSpec::is_fully_random() const {
  return n_a[0] == uav_geom.n_x && n_a[1] == uav_geom.n_second;
}

SensingRange SensingSpec::declared_range() const {
  const std::array<std::size_t, 2> sizes{uav_geom.n_x, uav_geom.n_second};
  std::array<AxisRange, 2> r;
  for (int a = 0; a < 2; ++a) {
    const double band = static_cast<double>(n_a[a]) / static_cast<double>(sizes[a]);
    r[a] = AxisRange::make(a == 0 ? center.psi : center.omega, w[a] + band);
  }
  return {r[0], r[1]};
}

void SensingSpec::validate() const {
  uav_geom.validate();
  if (!uav_geom.centered) throw std::invalid_argument("sensing spec needs the UAV geometry");
  if (n_measurements < 1) throw std::invalid_argument("n_measurements must be at least 1");
  const std::array<std::size_t, 2> sizes{uav_geom.n_x, uav_geom.n_second};
  const char* axis[2] = {"x", "y"};
  for (int a = 0; a < 2; ++a) {
    if (n_a[a] < 1 || sizes[a] % n_a[a] != 0) {
      throw std::invalid_argument("sub-array count " + std::to_string(n_a[a]) +
                                  " does not divide the " + axis[a] + " axis size " +
                                  std::to_string(sizes[a]));
    }
    if (!(w[a] >= 0.0) || !std::isfinite(w[a]))
      throw std::invalid_argument("center half-width must be finite and non-negative");
  }
}

CVector subarray_ula(std::size_t n_axis, const UlaDraws& draws) {
  const std::size_t n_a = draws.phases.size();
  if (n_a == 0 || n_axis % n_a != 0 || draws.centers.size() != n_a)
    throw std::invalid_argument("subarray_ula: sub-array count must divide the axis size");
  const std::size_t len = n_axis / n_a;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_axis));
  CVector out(n_axis);
  for (std::size_t k = 0; k < n_a; ++k) {
    const cd g = std::polar(scale, M_PI * draws.phases[k]);
    for (std::size_t i = 0; i < len; ++i) {
      out[k * len + i] = g * std::polar(1.0, M_PI * draws.centers[k] * static_cast<double>(i));
    }
  }
  return out;
}

CVector random_subarray_ula(Rng& rng, std::size_t n_axis, std::size_t n_a, double zeta_low,
                            double zeta_high, UlaDraws* draws) {
  if (n_a == 0 || n_axis % n_a != 0)
    throw std::invalid_argument("random_subarray_ula: sub-array count must divide the axis size");
  if (!(zeta_low <= zeta_high)) throw std::invalid_argument("random_subarray_ula: empty center range");
  UlaDraws d;
  d.phases.resize(n_a);
  d.centers.resize(n_a);
  for (std::size_t k = 0; k < n_a; ++k) {
    d.phases[k] = uniform(rng, -1.0, 1.0);
    d.centers[k] = wrap_cosine(uniform(rng, zeta_low, zeta_high));
  }
  CVector v = subarray_ula(n_axis, d);
  if (draws) *draws = std::move(d);
  return v;
}

SensingMatrix SensingMatrix::from_columns(const UpaGeometry& geom, CVector columns,
                                          SensingRange range) {
  geom.validate();
  if (columns.empty() || columns.size() % geom.size() != 0)
    throw std::invalid_argument("from_columns: data size is not a multiple of the array size");
  SensingMatrix m;
  m.geom_ = geom;
  m.n_columns_ = columns.size() / geom.size();
  m.data_ = std::move(columns);
  m.range_ = range;
  return m;
}

SensingMatrix SensingMatrix::from_factors(const UpaGeometry& geom, std::vector<CVector> x_factors,
                                          std::vector<CVector> y_factors, SensingRange range) {
  geom.validate();
  if (x_factors.empty() || x_factors.size() != y_factors.size())
    throw std::invalid_argument("from_factors: factor lists must be non-empty and equal length");
  SensingMatrix m;
  m.geom_ = geom;
  m.n_columns_ = x_factors.size();
  m.data_.resize(m.n_columns_ * geom.size());
  for (std::size_t n = 0; n < m.n_columns_; ++n) {
    if (x_factors[n].size() != geom.n_x || y_factors[n].size() != geom.n_second)
      throw std::invalid_argument("from_factors: factor length mismatch");
    simd::kron(x_factors[n], y_factors[n],
               std::span<cd>(m.data_).subspan(n * geom.size(), geom.size()));
  }
  m.x_factors_ = std::move(x_factors);
  m.y_factors_ = std::move(y_factors);
  m.range_ = range;
  return m;
}

std::span<const cd> SensingMatrix::column(std::size_t n) const {
  if (n >= n_columns_) throw std::out_of_range("SensingMatrix::column");
  return std::span<const cd>(data_).subspan(n * geom_.size(), geom_.size());
}

SensingMatrix SensingMatrix::prefix(std::size_t n) const {
  if (n < 1 || n > n_columns_) throw std::out_of_range("SensingMatrix::prefix");
  SensingMatrix m = *this;
  m.n_columns_ = n;
  m.data_.resize(n * geom_.size());
  if (has_factors()) {
    m.x_factors_.resize(n);
    m.y_factors_.resize(n);
  }
  if (!m.draws_.empty()) m.draws_.resize(n);
  if (m.has_spec_) m.spec_.n_measurements = n;
  return m;
}

SensingMatrix sensing_matrix(const SensingSpec& spec, Rng& rng) {
  spec.validate();
  const std::array<std::size_t, 2> sizes{spec.uav_geom.n_x, spec.uav_geom.n_second};
  const std::array<double, 2> centers{spec.center.psi, spec.center.omega};
  std::vector<CVector> xf, yf;
  std::vector<std::array<UlaDraws, 2>> draws(spec.n_measurements);
  xf.reserve(spec.n_measurements);
  yf.reserve(spec.n_measurements);
  for (std::size_t n = 0; n < spec.n_measurements; ++n) {
    for (int a = 0; a < 2; ++a) {
      CVector v = random_subarray_ula(rng, sizes[a], spec.n_a[a], centers[a] - spec.w[a],
                                      centers[a] + spec.w[a], &draws[n][a]);
      (a == 0 ? xf : yf).push_back(std::move(v));
    }
  }
  SensingMatrix m =
      SensingMatrix::from_factors(spec.uav_geom, std::move(xf), std::move(yf), spec.declared_range());
  m.draws_ = std::move(draws);
  m.spec_ = spec;
  m.has_spec_ = true;
  return m;
}

std::vector<double> full_grid(std::size_t z) {
  if (z < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g(z);
  for (std::size_t i = 0; i < z; ++i) g[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(z);
  return g;
}

std::vector<double> range_grid(const AxisRange& range, std::size_t z) {
  if (z < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g(z);
  const double step = range.width() / static_cast<double>(z);
  for (std::size_t i = 0; i < z; ++i)
    g[i] = wrap_cosine(range.lo() + (static_cast<double>(i) + 0.5) * step);
  return g;
}

namespace {

// a_n(i) = f_n^H v(x_i) for every factor f_n, layout [i * N + n].
CVector factor_response(const SensingMatrix& m, bool x_axis, std::span<const double> pts) {
  const std::size_t len = x_axis ? m.geometry().n_x : m.geometry().n_second;
  const std::size_t nc = m.n_columns();
  CVector out(pts.size() * nc);
  CVector v(len);
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    steering_into(pts[i], true, v);
    for (std::size_t n = 0; n < nc; ++n) {
      const auto f = x_axis ? m.x_factor(n) : m.y_factor(n);
      out[i * nc + n] = k.dot_conj(f.data(), v.data(), len);
    }
  }
  return out;
}

}  // namespace

GridResponse grid_response(const SensingMatrix& m, std::span<const double> psi,
                           std::span<const double> omega) {
  const std::size_t nc = m.n_columns();
  const std::size_t nx = m.geometry().n_x;
  const std::size_t ny = m.geometry().n_second;
  GridResponse r;
  r.psi.assign(psi.begin(), psi.end());
  r.omega.assign(omega.begin(), omega.end());
  r.n_columns = nc;
  r.c.resize(psi.size() * omega.size() * nc);

  if (m.has_factors()) {
    const CVector a = factor_response(m, true, psi);
    const CVector b = factor_response(m, false, omega);
    for (std::size_t i = 0; i < psi.size(); ++i)
      for (std::size_t j = 0; j < omega.size(); ++j)
        for (std::size_t n = 0; n < nc; ++n)
          r.c[(i * omega.size() + j) * nc + n] = a[i * nc + n] * b[j * nc + n];
    r.complex_macs = nc * (psi.size() * nx + omega.size() * ny + psi.size() * omega.size());
    return r;
  }

  // Generic matrix: contract the y axis first, t[n][ix] = sum_iy conj(m) v_y,
  // then c_n = sum_ix v_x[ix] t[n][ix].
  const auto& k = simd::kernels();
  std::vector<CVector> vx_conj(psi.size(), CVector(nx));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    steering_into(psi[i], true, vx_conj[i]);
    for (cd& e : vx_conj[i]) e = std::conj(e);
  }
  CVector vy(ny);
  CVector t(nc * nx);
  for (std::size_t j = 0; j < omega.size(); ++j) {
    steering_into(omega[j], true, vy);
    for (std::size_t n = 0; n < nc; ++n) {
      const cd* col = m.column(n).data();
      for (std::size_t ix = 0; ix < nx; ++ix) t[n * nx + ix] = k.dot_conj(col + ix * ny, vy.data(), ny);
    }
    for (std::size_t i = 0; i < psi.size(); ++i)
      for (std::size_t n = 0; n < nc; ++n)
        r.c[(i * omega.size() + j) * nc + n] = k.dot_conj(vx_conj[i].data(), &t[n * nx], nx);
  }
  r.complex_macs = omega.size() * nc * nx * (ny + psi.size());
  return r;
}

namespace {

std::vector<double> energy_grid(const GridResponse& r) {
  std::vector<double> e(r.psi.size() * r.omega.size());
  for (std::size_t i = 0; i < r.psi.size(); ++i)
    for (std::size_t j = 0; j < r.omega.size(); ++j) {
      double s = 0.0;
      for (const cd& c : r.at(i, j)) s += std::norm(c);
      e[i * r.omega.size() + j] = s;
    }
  return e;
}

}  // namespace

BeamspaceMap beamspace_map(const SensingMatrix& m, std::size_t z_psi, std::size_t z_omega) {
  if (z_psi < 2 || z_omega < 2) throw std::invalid_argument("beamspace_map: grid needs >= 2 points per axis");
  BeamspaceMap out;
  out.psi = full_grid(z_psi);
  out.omega = full_grid(z_omega);
  out.values = energy_grid(grid_response(m, out.psi, out.omega));
  const double mx = *std::max_element(out.values.begin(), out.values.end());
  if (mx > 0.0)
    for (double& v : out.values) v /= mx;
  return out;
}

EnergyFractions range_energy_fractions(const SensingMatrix& m, const SensingRange& range) {
  const auto psi = full_grid(4 * m.geometry().n_x);
  const auto omega = full_grid(4 * m.geometry().n_second);
  const auto e = energy_grid(grid_response(m, psi, omega));
  double total = 0.0, box = 0.0, in_psi = 0.0, in_omega = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const bool ip = range.psi.contains(psi[i]);
    for (std::size_t j = 0; j < omega.size(); ++j) {
      const bool io = range.omega.contains(omega[j]);
      const double v = e[i * omega.size() + j];
      total += v;
      if (ip) in_psi += v;
      if (io) in_omega += v;
      if (ip && io) box += v;
    }
  }
  if (!(total > 0.0)) return {};
  return {box / total, in_psi / total, in_omega / total};
}

double range_energy_fraction(const SensingMatrix& m, const SensingRange& range) {
  return range_energy_fractions(m, range).box;
}

}  // namespace uavmm
