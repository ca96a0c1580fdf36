#include "uavmm/harness/codebook.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace uavmm {

SensingSpec CodebookHeader::spec(double wavelength) const {
  const UpaGeometry g = UpaGeometry::uav(n_x, n_y, wavelength);
  return SensingSpec::partial(g, n_columns, n_a, w, AoaPair(center_psi, center_omega));
}

Codebook make_codebook(const SensingSpec& spec, std::uint64_t seed) {
  if (spec.n_a[0] != spec.n_a[1] || spec.w[0] != spec.w[1])
    throw std::invalid_argument("codebook files need the same n_a and w on both axes");
  Rng rng = make_stream(seed, 0, StreamId::Codebook);
  Codebook cb{{}, sensing_matrix(spec, rng)};
  cb.header.n_x = static_cast<std::uint32_t>(spec.uav_geom.n_x);
  cb.header.n_y = static_cast<std::uint32_t>(spec.uav_geom.n_second);
  cb.header.n_columns = static_cast<std::uint32_t>(spec.n_measurements);
  cb.header.n_a = static_cast<std::uint32_t>(spec.n_a[0]);
  cb.header.w = spec.w[0];
  cb.header.center_psi = spec.center.psi;
  cb.header.center_omega = spec.center.omega;
  cb.header.seed = seed;
  return cb;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v, int bytes) {
  char b[8];
  for (int i = 0; i < bytes; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, bytes);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v), 8); }

std::uint64_t get_u64(std::istream& in, int bytes) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), bytes)) throw std::runtime_error("codebook: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in, 8)); }

}  // namespace

void write_codebook(std::ostream& out, const Codebook& cb) {
  const CodebookHeader& h = cb.header;
  put_u64(out, h.version, 4);
  put_u64(out, h.n_x, 4);
  put_u64(out, h.n_y, 4);
  put_u64(out, h.n_columns, 4);
  put_u64(out, h.n_a, 4);
  put_f64(out, h.w);
  put_f64(out, h.center_psi);
  put_f64(out, h.center_omega);
  put_u64(out, h.seed, 8);
  for (const cd& z : cb.matrix.data()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  if (!out) throw std::runtime_error("codebook: write failed");
}

Codebook read_codebook(std::istream& in, double wavelength) {
  CodebookHeader h;
  h.version = static_cast<std::uint32_t>(get_u64(in, 4));
  if (h.version != kCodebookVersion)
    throw std::runtime_error("codebook: unsupported version " + std::to_string(h.version));
  h.n_x = static_cast<std::uint32_t>(get_u64(in, 4));
  h.n_y = static_cast<std::uint32_t>(get_u64(in, 4));
  h.n_columns = static_cast<std::uint32_t>(get_u64(in, 4));
  h.n_a = static_cast<std::uint32_t>(get_u64(in, 4));
  h.w = get_f64(in);
  h.center_psi = get_f64(in);
  h.center_omega = get_f64(in);
  h.seed = get_u64(in, 8);
  if (h.n_x == 0 || h.n_y == 0 || h.n_columns == 0 || h.n_a == 0 || h.n_x % h.n_a || h.n_y % h.n_a)
    throw std::runtime_error("codebook: inconsistent header");
  if (std::uint64_t(h.n_x) * h.n_y * h.n_columns > (std::uint64_t(1) << 28))
    throw std::runtime_error("codebook: implausibly large matrix");
  CVector data(std::size_t(h.n_x) * h.n_y * h.n_columns);
  for (cd& z : data) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  const SensingSpec spec = h.spec(wavelength);
  return {h, SensingMatrix::from_columns(spec.uav_geom, std::move(data), spec.declared_range())};
}

void save_codebook(const std::string& path, const Codebook& cb) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("codebook: cannot open " + path);
  write_codebook(out, cb);
}

Codebook load_codebook(const std::string& path, double wavelength) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("codebook: cannot open " + path);
  return read_codebook(in, wavelength);
}

namespace {

bool covers(const AxisRange& r, const Interval& iv) {
  if (r.is_full()) return true;
  if (iv.hi - iv.lo > r.width()) return false;
  return std::abs(wrap_sub(iv.lo, r.center)) <= r.half && std::abs(wrap_sub(iv.hi, r.center)) <= r.half;
}

}  // namespace

std::optional<std::size_t> select_codebook(const std::vector<CodebookHeader>& set,
                                           const AoaDistribution& dist) {
  std::optional<std::size_t> best;
  double best_area = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const SensingRange r = set[i].declared_range();
    if (!covers(r.psi, dist.three_sigma[0]) || !covers(r.omega, dist.three_sigma[1])) continue;
    const double area = r.psi.width() * r.omega.width();
    if (!best || area < best_area) {
      best = i;
      best_area = area;
    }
  }
  return best;
}

}  // namespace uavmm
