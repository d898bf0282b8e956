#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zagreb/model.hpp"
#include "zagreb/rational.hpp"

namespace zagreb {

/// H_k = 1 + 1/2 + ... + 1/k (H_0 = 0). For integer n, Psi(n) + gamma = H_{n-1}.
Rational harmonic(std::uint64_t k);

/// Gamma(n + 1/2) / (sqrt(pi) Gamma(n - 1)) = (2n)! / (4^n n! (n - 2)!), n >= 2.
Rational half_gamma_ratio(std::uint64_t n);

/// E[Z_n] of a PORT: 2 (n - 1) H_{n-1}.
Rational port_mean_closed(std::uint64_t n);
/// E[Y_n] of a PORT: 32 R(n) - 6 (n - 1) (H_{n-1} + 8/3).
Rational port_cubic_closed(std::uint64_t n);
/// E[X_n] of a PORT: 36 (n - 1) (n + 7 H_{n-1} / 18 + 5/3) - 192 R(n).
Rational port_quartic_closed(std::uint64_t n);

/// Closed-form caterpillar mean, including its additive 2(2m - 3) term.
Rational caterpillar_mean_closed(std::uint64_t n, std::uint32_t m);
/// Closed-form caterpillar E[Y_n] (agrees with the recurrence exactly).
Rational caterpillar_cubic_closed(std::uint64_t n, std::uint32_t m);
/// Constant gap between the closed-form caterpillar mean and the recurrence:
/// 2(2m - 3) / ((2m - 1)(m - 1)).
Rational caterpillar_mean_offset(std::uint32_t m);

/// Limit constant quoted for the PORT skewness,
/// (-72g^2 + 164g - 41/3 + 4 pi^2 g - 8g^3) / (16 - 2 pi^2 / 3)^{3/2}.
double port_skewness_limit_closed();

struct AuditEntry {
  std::string quantity;
  std::uint64_t n = 0;
  /// True when the closed form is exact and `delta` is an exact difference;
  /// false for leading-order forms, where `residual` is the remainder
  /// divided by its stated order.
  bool exact = false;
  Rational recurrence;
  std::optional<Rational> delta;
  double residual = 0.0;
  std::string remainder_order;
};

struct AuditReport {
  ModelSpec model = ModelSpec::port();
  std::vector<AuditEntry> entries;
};

/// Evaluates every closed form known for the model against the recurrence
/// values for n in [n_lo, n_hi] (clamped to the model's domain).
AuditReport closed_form_audit(const ModelSpec& spec, std::uint64_t n_lo, std::uint64_t n_hi);

}  // namespace zagreb
