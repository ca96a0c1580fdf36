#pragma once
// Stored sensing matrices ("codebooks") with different sensing ranges, so a
// UAV can pick a pre-generated matrix matching its current uncertainty.
//
// File layout, all little-endian, no padding:
//   u32 version (1), u32 n_x, u32 n_y, u32 n_columns, u32 n_a,
//   f64 w, f64 center_psi, f64 center_omega, u64 seed,
//   then n_columns * n_x * n_y complex entries, column-major, each as two
//   f64 (real, imaginary).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavmm/jitter.hpp"
#include "uavmm/sensing.hpp"

namespace uavmm {

inline constexpr std::uint32_t kCodebookVersion = 1;
inline constexpr std::size_t kCodebookHeaderBytes = 52;

struct CodebookHeader {
  std::uint32_t version = kCodebookVersion;
  std::uint32_t n_x = 0;
  std::uint32_t n_y = 0;
  std::uint32_t n_columns = 0;
  std::uint32_t n_a = 0;
  double w = 0.0;
  double center_psi = 0.0;
  double center_omega = 0.0;
  std::uint64_t seed = 0;

  SensingSpec spec(double wavelength = 1.0) const;
  SensingRange declared_range() const { return spec().declared_range(); }
};

struct Codebook {
  CodebookHeader header;
  SensingMatrix matrix;
};

// Generates the matrix for the spec from the codebook stream of `seed`.
// Both axes must share n_a and w.
Codebook make_codebook(const SensingSpec& spec, std::uint64_t seed);

void write_codebook(std::ostream& out, const Codebook& cb);
// Throws std::runtime_error on a truncated or inconsistent file.
Codebook read_codebook(std::istream& in, double wavelength = 1.0);

void save_codebook(const std::string& path, const Codebook& cb);
Codebook load_codebook(const std::string& path, double wavelength = 1.0);

// Index of the codebook with the smallest declared range containing both
// 3-sigma intervals of the distribution; nullopt if none covers them.
std::optional<std::size_t> select_codebook(const std::vector<CodebookHeader>& set,
                                           const AoaDistribution& dist);

}  // namespace uavmm
