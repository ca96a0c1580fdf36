#pragma once
// Maximum-likelihood UAV-side AoA estimation from compressed measurements
// y = tau_bar * M^H b(Psi, Omega) + noise.
//
// The objective is g = |b^H M y|^2 / ||M^H b||^2, maximized by a coarse grid
// search over the sensing range followed by wrapped gradient ascent from the
// best few grid maxima.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavmm/geometry.hpp"
#include "uavmm/sensing.hpp"

namespace uavmm {

struct EstimatorConfig {
  std::size_t z_psi = 0;    // 0: ceil(2 * domain width * N_x)
  std::size_t z_omega = 0;  // 0: ceil(2 * domain width * N_y)
  std::size_t n_pk = 3;
  // Absolute step; unset means 1 / (pi^2 N_x N_y ||y||^2).
  std::optional<double> step;
  double epsilon = 1e-10;
  // The default step needs 40-80 iterations on square arrays and more on
  // elongated ones, so this is a guard rather than a budget.
  std::size_t max_iterations = 500;
  // Unset means the sensing matrix's declared range.
  std::optional<SensingRange> domain;

  void validate() const;
};

struct Candidate {
  AoaPair aoa;
  double value = 0.0;
};

struct RefinedPoint {
  AoaPair aoa;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Complex multiply-accumulate counts, for checking how cost scales.
struct OpCount {
  std::uint64_t coarse = 0;
  std::uint64_t fine = 0;
};

struct AoaEstimate {
  AoaPair aoa;
  double value = 0.0;
  std::size_t iterations = 0;  // total over all candidates
  std::vector<Candidate> candidates;
  std::vector<RefinedPoint> refined;
  OpCount ops;
};

// g at the given angles; 0 when ||M^H b|| is below 1e-6 sqrt(N).
double objective(AoaPair aoa, const SensingMatrix& m, std::span<const cd> y);
double objective(double psi, double omega, const SensingMatrix& m, std::span<const cd> y);

// (dg/dPsi, dg/dOmega), computed with the uncentered response internally.
std::array<double, 2> objective_gradient(double psi, double omega, const SensingMatrix& m,
                                         std::span<const cd> y);
// Same derivative taken with the centered response and its centered phase
// ramp. Global phase cancels in g, so both must agree.
std::array<double, 2> objective_gradient_centered(double psi, double omega,
                                                  const SensingMatrix& m, std::span<const cd> y);

std::vector<Candidate> coarse_search(const SensingMatrix& m, std::span<const cd> y,
                                     const EstimatorConfig& cfg);
RefinedPoint fine_search(const Candidate& start, const SensingMatrix& m, std::span<const cd> y,
                         const EstimatorConfig& cfg);
AoaEstimate estimate_aoa(const SensingMatrix& m, std::span<const cd> y, const EstimatorConfig& cfg);

// Exhaustive argmax of g over full_grid(z_psi) x full_grid(z_omega); ties (within
// 1e-12 relative) go to the first point in psi-major scan order. The default grid is 8 N_axis points.
AoaPair brute_force_oracle(const SensingMatrix& m, std::span<const cd> y, std::size_t z_psi,
                           std::size_t z_omega);
AoaPair brute_force_oracle(const SensingMatrix& m, std::span<const cd> y);

// Estimator bound to one sensing matrix. The coarse grid response does not
// depend on y and is computed once, so repeated estimates (power sweeps) only
// pay for the y-dependent work.
class MleEstimator {
 public:
  MleEstimator(SensingMatrix m, EstimatorConfig cfg);

  AoaEstimate estimate(std::span<const cd> y) const;
  std::vector<Candidate> coarse(std::span<const cd> y, std::uint64_t* macs = nullptr) const;

  const SensingMatrix& matrix() const { return m_; }
  const SensingRange& domain() const { return domain_; }
  std::size_t z_psi() const { return grid_.psi.size(); }
  std::size_t z_omega() const { return grid_.omega.size(); }
  std::uint64_t grid_macs() const { return grid_.complex_macs; }

 private:
  SensingMatrix m_;
  EstimatorConfig cfg_;
  SensingRange domain_;
  GridResponse grid_;
};

}  // namespace uavmm
