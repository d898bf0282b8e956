#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zagreb/model.hpp"
#include "zagreb/rational.hpp"

namespace zagreb {

/// Exact power sums of the Zagreb values over replicates. Merging is plain
/// integer addition, so the result does not depend on how replicates were
/// split between workers or in which order partial sums were combined.
struct PowerSums {
  std::uint64_t count = 0;
  mpz_class s1 = 0;
  mpz_class s2 = 0;
  mpz_class s3 = 0;
  mpz_class s4 = 0;
  mpz_class s5 = 0;
  mpz_class s6 = 0;

  void add(u128 z);
  void merge(const PowerSums& other);

  friend bool operator==(const PowerSums&, const PowerSums&) = default;
};

struct ReplicateConfig {
  ModelSpec model = ModelSpec::port();
  std::uint64_t n = 0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Keep every replicate's Z (in replicate order) for KS tests and dumps.
  bool keep_samples = true;
};

struct SampleSummary {
  ModelSpec model = ModelSpec::port();
  std::uint64_t n = 0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  PowerSums sums;
  std::vector<u128> samples;
  std::optional<double> ks_statistic;
  double wall_time = 0.0;

  /// sum Z / R, exact.
  Rational mean() const;
  /// Unbiased sample variance (sum Z^2 - (sum Z)^2 / R) / (R - 1), exact.
  Rational variance() const;
  /// k-th central moment with divisor R, exact (k in 2..6).
  Rational central_moment(unsigned k) const;

  double se_mean() const;
  double se_variance() const;
  /// Adjusted Fisher-Pearson skewness G1 = g1 sqrt(R(R-1)) / (R-2).
  double skewness() const;
  /// Standard error of G1 under normality.
  double se_skewness() const;
  /// Delta-method standard error of g1 from the sample moments up to order
  /// six; valid for skewed, heavy-tailed populations.
  double se_skewness_robust() const;
};

/// Zagreb index of one trajectory grown to time n with RngStream(seed, stream).
u128 simulate_zagreb(const ModelSpec& model, std::uint64_t n, std::uint64_t seed,
                     std::uint64_t stream);

/// R independent trajectories, replicate i driven by RngStream(seed, i),
/// distributed over `workers` OpenMP threads.
SampleSummary run_replicates(const ReplicateConfig& config);

/// Single-threaded reference of run_replicates; same streams, same result.
SampleSummary run_replicates_serial(const ReplicateConfig& config);

double empirical_skewness(const SampleSummary& summary);

}  // namespace zagreb
