#pragma once
// Random sensing matrices for the UAV-side compressed beam training.
//
// Each column is kron(m_x, m_y), where the per-axis factor is a ULA split into
// N_a sub-arrays; sub-array k carries a random phase e^{j pi phi_k} and steers
// towards a random center zeta_k drawn around the navigation estimate.
// N_a equal to the axis size gives the fully random (omnidirectional) matrix.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "uavmm/geometry.hpp"
#include "uavmm/random.hpp"

namespace uavmm {

// Wrapped interval center +- half on the cosine-angle circle. half >= 1 covers
// the whole axis and is normalized to center 0, half 1.
struct AxisRange {
  double center = 0.0;
  double half = 1.0;

  static AxisRange make(double center, double half);
  static AxisRange full() { return {0.0, 1.0}; }

  bool is_full() const { return half >= 1.0; }
  double lo() const { return center - half; }
  double hi() const { return center + half; }
  double width() const { return 2.0 * half; }
  // Open interval test under wrapping.
  bool contains(double x) const;
  // Nearest point of the closed interval.
  double clamp(double x) const;
};

struct SensingRange {
  AxisRange psi;
  AxisRange omega;

  static SensingRange full() { return {AxisRange::full(), AxisRange::full()}; }
  bool contains(AoaPair a) const { return psi.contains(a.psi) && omega.contains(a.omega); }
};

struct SensingSpec {
  std::size_t n_measurements = 1;
  std::array<std::size_t, 2> n_a{1, 1};  // sub-arrays along x, y
  std::array<double, 2> w{0.0, 0.0};     // center half-width along x, y
  AoaPair center;
  UpaGeometry uav_geom;

  static SensingSpec fully_random(const UpaGeometry& geom, std::size_t n, AoaPair center = {});
  static SensingSpec partial(const UpaGeometry& geom, std::size_t n, std::size_t n_a, double w,
                             AoaPair center = {});

  bool is_fully_random() const;
  SensingRange declared_range() const;
  // Throws std::invalid_argument naming the violated condition.
  void validate() const;
};

// Random draws behind one ULA factor, enough to rebuild it bit-exactly.
struct UlaDraws {
  std::vector<double> phases;   // phi_k in (-1, 1)
  std::vector<double> centers;  // zeta_k, wrapped
};

CVector subarray_ula(std::size_t n_axis, const UlaDraws& draws);

// Draws N_a (phase, center) pairs in block order, centers uniform on
// [zeta_low, zeta_high] then wrapped; returns the unit-norm ULA vector.
CVector random_subarray_ula(Rng& rng, std::size_t n_axis, std::size_t n_a, double zeta_low,
                            double zeta_high, UlaDraws* draws = nullptr);

class SensingMatrix {
 public:
  // Generic matrix from explicit column-major columns (length N_U each).
  // The range defaults to the whole box.
  static SensingMatrix from_columns(const UpaGeometry& geom, CVector columns,
                                    SensingRange range = SensingRange::full());
  // Kronecker-structured matrix: column n = kron(x_factors[n], y_factors[n]).
  static SensingMatrix from_factors(const UpaGeometry& geom, std::vector<CVector> x_factors,
                                    std::vector<CVector> y_factors, SensingRange range);

  std::size_t n_columns() const { return n_columns_; }
  std::size_t n_elements() const { return geom_.size(); }
  const UpaGeometry& geometry() const { return geom_; }
  const SensingRange& declared_range() const { return range_; }
  std::span<const cd> column(std::size_t n) const;
  std::span<const cd> data() const { return data_; }

  bool has_factors() const { return !x_factors_.empty(); }
  std::span<const cd> x_factor(std::size_t n) const { return x_factors_[n]; }
  std::span<const cd> y_factor(std::size_t n) const { return y_factors_[n]; }

  // Generation record (empty for matrices not built by sensing_matrix).
  const std::vector<std::array<UlaDraws, 2>>& draws() const { return draws_; }
  const SensingSpec* spec() const { return has_spec_ ? &spec_ : nullptr; }

  // First n columns, same range and geometry. Because columns are drawn in
  // order, the prefix of a matrix with N columns equals the matrix generated
  // with n columns from the same stream.
  SensingMatrix prefix(std::size_t n) const;

 private:
  friend SensingMatrix sensing_matrix(const SensingSpec& spec, Rng& rng);

  UpaGeometry geom_;
  std::size_t n_columns_ = 0;
  CVector data_;
  std::vector<CVector> x_factors_;
  std::vector<CVector> y_factors_;
  SensingRange range_ = SensingRange::full();
  std::vector<std::array<UlaDraws, 2>> draws_;
  SensingSpec spec_;
  bool has_spec_ = false;
};

// Column by column: x factor draws then y factor draws.
SensingMatrix sensing_matrix(const SensingSpec& spec, Rng& rng);

// Evaluation grid over one axis of the cosine-angle box.
std::vector<double> full_grid(std::size_t z);                         // -1 + 2 i / z
std::vector<double> range_grid(const AxisRange& range, std::size_t z);  // cell centers, wrapped

// Per-column responses c_n(psi_i, omega_j) = m_n^H b(psi_i, omega_j) with b the
// centered UAV response. Layout [(i * z_omega + j) * N + n].
struct GridResponse {
  std::vector<double> psi;
  std::vector<double> omega;
  std::size_t n_columns = 0;
  CVector c;
  std::uint64_t complex_macs = 0;

  std::span<const cd> at(std::size_t i, std::size_t j) const {
    return std::span<const cd>(c).subspan((i * omega.size() + j) * n_columns, n_columns);
  }
};

GridResponse grid_response(const SensingMatrix& m, std::span<const double> psi,
                           std::span<const double> omega);

// ||M^H b||^2 on a psi-major grid.
struct BeamspaceMap {
  std::vector<double> psi;
  std::vector<double> omega;
  std::vector<double> values;  // [i * omega.size() + j]
  double at(std::size_t i, std::size_t j) const { return values[i * omega.size() + j]; }
};

// Normalized so the maximum is exactly 1 (all zero if M captures nothing).
BeamspaceMap beamspace_map(const SensingMatrix& m, std::size_t z_psi, std::size_t z_omega);

struct EnergyFractions {
  double box = 0.0;    // inside both axis intervals
  double psi = 0.0;    // psi inside, any omega
  double omega = 0.0;  // omega inside, any psi
};

// Grid-summed captured energy inside the range relative to the total, on a
// grid oversampling the beamwidth 4x (4 N_axis points per axis).
EnergyFractions range_energy_fractions(const SensingMatrix& m, const SensingRange& range);
double range_energy_fraction(const SensingMatrix& m, const SensingRange& range);

}  // namespace uavmm
