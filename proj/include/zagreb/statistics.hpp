#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zagreb/indices.hpp"

namespace zagreb {

/// Standard normal CDF, 0.5 erfc(-x / sqrt 2).
double normal_cdf(double x);

/// (Z - (5m^2 + m) n) / (2m sqrt(m + 1) sqrt(n)).
double standardize_clt(u128 z, std::uint64_t n, std::uint32_t m);
std::vector<double> standardize_clt(std::span<const u128> samples, std::uint64_t n, std::uint32_t m);

/// Kolmogorov-Smirnov distance sup |F_R - Phi| of at least 100 samples.
double ks_normal(std::span<const double> samples);

}  // namespace zagreb
