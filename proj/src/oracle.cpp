#include "zagreb/oracle.hpp"

#include <algorithm>
#include <vector>

#include "zagreb/errors.hpp"

namespace zagreb {

namespace {

using Multiset = std::vector<Degree>;  // sorted ascending
using Level = std::map<Multiset, Rational>;

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return c;
}

mpz_class to_mpz(u128 v) {
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  mpz_class out = hi << 64;
  out += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return out;
}

struct Run {
  Degree value;
  std::uint32_t count;
};

std::vector<Run> runs_of(const Multiset& ms) {
  std::vector<Run> runs;
  for (const Degree d : ms) {
    if (!runs.empty() && runs.back().value == d) {
      ++runs.back().count;
    } else {
      runs.push_back({d, 1});
    }
  }
  return runs;
}

/// Single parent drawn proportionally to degree among the entries of `ms`.
/// Appends `newcomer` (if nonzero) to every successor.
void expand_proportional(const Multiset& ms, const Rational& p, Degree newcomer, Level& next) {
  std::uint64_t total = 0;
  for (const Degree d : ms) total += d;
  std::size_t offset = 0;
  for (const Run& run : runs_of(ms)) {
    Multiset succ = ms;
    ++succ[offset + run.count - 1];  // last copy keeps the order sorted
    if (newcomer != 0) succ.insert(std::upper_bound(succ.begin(), succ.end(), newcomer), newcomer);
    Rational weight(mpz_class(static_cast<unsigned long>(run.count) * run.value),
                    mpz_class(static_cast<unsigned long>(total)));
    weight.canonicalize();
    next[std::move(succ)] += p * weight;
    offset += run.count;
  }
}

/// Uniform m-subset of the nodes; subsets are grouped by how many nodes of
/// each distinct degree they take.
void expand_uniform_subset(const Multiset& ms, const Rational& p, std::uint32_t m, Level& next) {
  const std::vector<Run> runs = runs_of(ms);
  const mpz_class subsets = binomial(ms.size(), m);
  std::vector<std::uint32_t> take(runs.size(), 0);

  auto emit = [&]() {
    mpz_class ways = 1;
    Multiset succ;
    succ.reserve(ms.size() + 1);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      ways *= binomial(runs[i].count, take[i]);
      succ.insert(succ.end(), runs[i].count - take[i], runs[i].value);
      succ.insert(succ.end(), take[i], runs[i].value + 1);
    }
    succ.push_back(m);
    std::sort(succ.begin(), succ.end());
    Rational weight(ways, subsets);
    weight.canonicalize();
    next[std::move(succ)] += p * weight;
  };

  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t remaining) -> void {
    if (i == runs.size()) {
      if (remaining == 0) emit();
      return;
    }
    const std::uint32_t top = std::min(remaining, runs[i].count);
    for (std::uint32_t k = 0; k <= top; ++k) {
      take[i] = k;
      self(self, i + 1, remaining - k);
    }
    take[i] = 0;
  };
  recurse(recurse, 0, m);
}

Multiset genesis(const ModelSpec& spec) {
  GrowthState state = init_state(spec);
  Multiset ms = state.degrees;
  std::sort(ms.begin(), ms.end());
  return ms;
}

}  // namespace

Rational ExactDistribution::total_probability() const {
  Rational total = 0;
  for (const auto& [triple, p] : atoms) total += p;
  return total;
}

mpz_class history_count(const ModelSpec& spec, std::uint64_t n) {
  mpz_class count = 1;
  for (std::uint64_t t = spec.initial_time() + 1; t <= n; ++t) {
    switch (spec.kind()) {
      case ModelKind::ExtendedRrt: count *= binomial(t + spec.m0() - 2, spec.m()); break;
      case ModelKind::Port: count *= static_cast<unsigned long>(t - 1); break;
      case ModelKind::Caterpillar: count *= spec.m(); break;
    }
  }
  return count;
}

ExactDistribution enumerate(const ModelSpec& spec, std::uint64_t n, std::uint64_t budget) {
  if (n < spec.initial_time()) {
    throw DomainError("n=" + std::to_string(n) + " is below the initial time of " + spec.name());
  }
  const mpz_class histories = history_count(spec, n);
  if (histories > mpz_class(static_cast<unsigned long>(budget))) {
    throw BudgetExceededError("oracle refuses " + spec.name() + " at n=" + std::to_string(n) + ": " +
                                  histories.get_str() + " histories exceed the budget of " +
                                  std::to_string(budget),
                              histories.get_str());
  }

  Level level;
  level.emplace(genesis(spec), Rational(1));
  for (std::uint64_t t = spec.initial_time() + 1; t <= n; ++t) {
    Level next;
    for (const auto& [ms, p] : level) {
      switch (spec.kind()) {
        case ModelKind::ExtendedRrt: expand_uniform_subset(ms, p, spec.m(), next); break;
        case ModelKind::Port: expand_proportional(ms, p, 1, next); break;
        case ModelKind::Caterpillar: expand_proportional(ms, p, 0, next); break;
      }
    }
    level = std::move(next);
  }

  ExactDistribution dist;
  dist.model = spec;
  dist.n = n;
  const std::uint64_t leaves = spec.kind() == ModelKind::Caterpillar ? n : 0;
  for (const auto& [ms, p] : level) {
    const IndexBundle b = compute_bundle(ms, leaves, n);
    dist.atoms[IndexTriple{b.zagreb, b.cubic, b.quartic}] += p;
  }
  return dist;
}

Rational moment(const ExactDistribution& dist, IndexKind which, unsigned k) {
  if (k < 1) throw DomainError("moment order must be >= 1");
  Rational total = 0;
  mpz_class power;
  for (const auto& [triple, p] : dist.atoms) {
    const u128 v = which == IndexKind::Z ? triple.z : which == IndexKind::Y ? triple.y : triple.x;
    mpz_pow_ui(power.get_mpz_t(), to_mpz(v).get_mpz_t(), k);
    total += p * power;
  }
  return total;
}

Rational mixed_moment(const ExactDistribution& dist, unsigned z_power, unsigned y_power) {
  Rational total = 0;
  mpz_class zp, yp;
  for (const auto& [triple, p] : dist.atoms) {
    mpz_pow_ui(zp.get_mpz_t(), to_mpz(triple.z).get_mpz_t(), z_power);
    mpz_pow_ui(yp.get_mpz_t(), to_mpz(triple.y).get_mpz_t(), y_power);
    total += p * zp * yp;
  }
  return total;
}

}  // namespace zagreb
