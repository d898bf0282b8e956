#include "zagreb/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zagreb/errors.hpp"
#include "zagreb/moments.hpp"

namespace zagreb {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double standardize_clt(u128 z, std::uint64_t n, std::uint32_t m) {
  const CltParams p = clt_params(m, n);
  return (static_cast<double>(z) - p.centering) / p.scale;
}

std::vector<double> standardize_clt(std::span<const u128> samples, std::uint64_t n, std::uint32_t m) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const u128 z : samples) out.push_back(standardize_clt(z, n, m));
  return out;
}

double ks_normal(std::span<const double> samples) {
  if (samples.size() < 100) {
    throw DomainError("KS statistic needs at least 100 samples (got " +
                      std::to_string(samples.size()) + ")");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double r = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / r - phi, phi - static_cast<double>(i) / r});
  }
  return d;
}

}  // namespace zagreb
