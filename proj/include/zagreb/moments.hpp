#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zagreb/model.hpp"
#include "zagreb/rational.hpp"

namespace zagreb {

enum class Regime { Exact, Float128 };

const char* to_string(Regime regime);

/// Moments of the index sequence at one time n. Which optional fields are
/// filled depends on the model: Port carries everything, Caterpillar adds
/// mean_y, ExtendedRrt only the first two moments of Z.
struct MomentRow {
  std::uint64_t n = 0;
  Regime regime = Regime::Exact;
  /// First-order bound on the relative error of the float regime; 0 if exact.
  double relative_error_bound = 0.0;

  Rational mean_z;
  Rational second_z;
  Rational var_z;
  std::optional<Rational> third_z;
  std::optional<Rational> mean_y;
  std::optional<Rational> mean_x;
  std::optional<Rational> mixed_zy;
  std::optional<mpf_class> skewness_z;

  /// E[(Z - E Z)^3] from the raw moments; requires third_z.
  Rational third_central() const;
};

struct MomentTable {
  ModelSpec model = ModelSpec::port();
  std::vector<MomentRow> rows;

  /// Row for time n; throws DomainError if the table does not hold it.
  const MomentRow& at(std::uint64_t n) const;
};

struct TableOptions {
  /// Times to keep. Empty keeps every n from the model's initial time to n_max.
  std::vector<std::uint64_t> rows;
  /// Iteration switches to 128-bit floats for every step past this time.
  std::uint64_t float_threshold = 1'000'000;
};

/// Centering, scale and limit variance of the extended-RRT central limit
/// theorem: (Z_n - (5m^2 + m) n) / (2m sqrt(m + 1) sqrt(n)) -> N(0, 1).
struct CltParams {
  double centering = 0.0;
  double scale = 0.0;
  double limit_variance = 0.0;
};

CltParams clt_params(std::uint32_t m, std::uint64_t n);

// Extended RRT. E[Z_n | F] - Z_{n-1} is deterministic, so the mean
// recurrence is a plain sum; the second moment follows from squaring the
// one-step relation and averaging over the uniformly chosen m-subset.

Rational ext_rrt_mean(std::uint64_t n, std::uint32_t m0, std::uint32_t m);
Rational ext_rrt_second_moment(std::uint64_t n, std::uint32_t m0, std::uint32_t m);
Rational ext_rrt_variance(std::uint64_t n, std::uint32_t m0, std::uint32_t m);

/// Variance by the second route: Var Z_n = Var Z_{n-1} + E[Var(Z_n | F)],
/// valid because the conditional drift does not depend on the state.
Rational ext_rrt_variance_by_increments(std::uint64_t n, std::uint32_t m0, std::uint32_t m);

MomentTable ext_rrt_moment_table(std::uint32_t m0, std::uint32_t m, std::uint64_t n_max,
                                 const TableOptions& options = {});

/// Coupled recurrences for E[Z], E[Y], E[X], E[Z^2], E[ZY], E[Z^3] of a PORT,
/// started at n = 2 (a single edge).
MomentTable port_moment_table(std::uint64_t n_max, const TableOptions& options = {});

/// Skewness of Z_n for a PORT from the exact moments. Throws
/// UndefinedSkewnessError when Var Z_n = 0 (n <= 3).
mpf_class port_skewness(std::uint64_t n);

/// Coupled recurrences for E[Z], E[Y], E[Z^2] of a random caterpillar.
MomentTable caterpillar_moment_table(std::uint32_t m, std::uint64_t n_max,
                                     const TableOptions& options = {});

MomentTable moment_table(const ModelSpec& spec, std::uint64_t n_max,
                         const TableOptions& options = {});

/// mu_3 / var^{3/2} evaluated with kEvaluationBits of mantissa.
mpf_class standardized_third_moment(const Rational& third_central, const Rational& variance);

}  // namespace zagreb
