#pragma once

#include <compare>
#include <cstdint>
#include <map>

#include "zagreb/indices.hpp"
#include "zagreb/model.hpp"
#include "zagreb/rational.hpp"

namespace zagreb {

/// (Z, Y, X) of one outcome; ordered by Z first.
struct IndexTriple {
  u128 z = 0;
  u128 y = 0;
  u128 x = 0;

  friend auto operator<=>(const IndexTriple&, const IndexTriple&) = default;
};

/// Exact law of the index triple at time n.
struct ExactDistribution {
  ModelSpec model = ModelSpec::port();
  std::uint64_t n = 0;
  std::map<IndexTriple, Rational> atoms;

  Rational total_probability() const;
};

enum class IndexKind { Z, Y, X };

inline constexpr std::uint64_t kHistoryBudget = 10'000'000;

/// Number of labeled growth histories from genesis to time n (product of the
/// number of choices at every step).
mpz_class history_count(const ModelSpec& spec, std::uint64_t n);

/// Enumerates every growth history with its exact probability, merging
/// histories that reach the same degree multiset. Throws BudgetExceededError
/// when history_count exceeds `budget`.
ExactDistribution enumerate(const ModelSpec& spec, std::uint64_t n,
                            std::uint64_t budget = kHistoryBudget);

/// E[V^k] for V in {Z, Y, X}.
Rational moment(const ExactDistribution& dist, IndexKind which, unsigned k);

/// E[Z^a Y^b].
Rational mixed_moment(const ExactDistribution& dist, unsigned z_power, unsigned y_power);

}  // namespace zagreb
