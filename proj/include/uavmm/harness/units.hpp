#pragma once

#include <span>

namespace uavmm {

// 10^((dbm - 30) / 10)
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Pairwise (cascade) summation; the result does not depend on how trials
// were scheduled, only on their order.
double pairwise_sum(std::span<const double> v);
double mean(std::span<const double> v);
// Sample standard error of the mean; 0 for fewer than two values.
double standard_error(std::span<const double> v);

}  // namespace uavmm
