#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "zagreb/errors.hpp"
#include "zagreb/model.hpp"

using namespace zagreb;

namespace {

// 0.999 quantile of chi-square with 9 degrees of freedom.
constexpr double kChiSquare999Df9 = 27.877164871256568;

std::uint64_t degree_sum_closed(const ModelSpec& spec, std::uint64_t n) {
  switch (spec.kind()) {
    case ModelKind::ExtendedRrt: return spec.m0() * (spec.m0() - 1) + 2 * spec.m() * (n - 1);
    case ModelKind::Port: return 2 * (n - 1);
    case ModelKind::Caterpillar: return n + 2 * spec.m() - 2;
  }
  return 0;
}

std::uint64_t node_count_closed(const ModelSpec& spec, std::uint64_t n) {
  switch (spec.kind()) {
    case ModelKind::ExtendedRrt: return spec.m0() + n - 1;
    case ModelKind::Port: return n;
    case ModelKind::Caterpillar: return spec.m() + n;
  }
  return 0;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("parameter domains") {
    CHECK_THROWS_AS(ModelSpec::extended_rrt(2, 3), DomainError);
    CHECK_THROWS_AS(ModelSpec::extended_rrt(3, 0), DomainError);
    CHECK_THROWS_AS(ModelSpec::caterpillar(1), DomainError);
    CHECK_NOTHROW(ModelSpec::extended_rrt(1, 1));
    CHECK(ModelSpec::extended_rrt(3, 2).params() == "m0=3;m=2");
    CHECK(ModelSpec::caterpillar(2).params() == "m=2");
    CHECK(ModelSpec::port().params().empty());
    CHECK(parse_model_kind("ext-rrt") == ModelKind::ExtendedRrt);
    CHECK_THROWS_AS(parse_model_kind("tree"), DomainError);
  }

  TEST_CASE("genesis states") {
    const GrowthState rrt = init_state(ModelSpec::extended_rrt(3, 2));
    CHECK(rrt.n == 1);
    CHECK(rrt.degrees == std::vector<Degree>{2, 2, 2});
    CHECK(rrt.indices.zagreb == 12);

    const GrowthState cat = init_state(ModelSpec::caterpillar(2));
    CHECK(cat.n == 0);
    CHECK(cat.degrees == std::vector<Degree>{1, 1});
    CHECK(cat.leaf_count == 0);
    CHECK(cat.indices.zagreb == 2);

    const GrowthState cat4 = init_state(ModelSpec::caterpillar(4));
    CHECK(cat4.degrees == std::vector<Degree>{1, 2, 2, 1});
    CHECK(cat4.indices.zagreb == 4 * 4 - 6);

    const GrowthState port = init_state(ModelSpec::port());
    CHECK(port.n == 2);
    CHECK(port.degrees == std::vector<Degree>{1, 1});
    CHECK(port.indices.zagreb == 2);
    CHECK(port.indices.cubic == 2);

    const GrowthState lone = init_state(ModelSpec::extended_rrt(1, 1));
    CHECK(lone.degrees == std::vector<Degree>{0});
    CHECK(lone.indices.zagreb == 0);
  }

  TEST_CASE("forced small trajectories") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RngStream a(seed, 0), b(seed, 1), c(seed, 2);
      CHECK(grow_to(ModelSpec::port(), 3, a).indices.zagreb == 6);
      CHECK(grow_to(ModelSpec::extended_rrt(1, 1), 3, b).indices.zagreb == 6);
      CHECK(grow_to(ModelSpec::caterpillar(2), 1, c).indices.zagreb == 6);
    }
    RngStream rng(1, 1);
    CHECK_THROWS_AS(grow_to(ModelSpec::port(), 1, rng), DomainError);
  }

  TEST_CASE("closed-form degree totals and node counts along trajectories") {
    for (const ModelSpec& spec : {ModelSpec::port(), ModelSpec::extended_rrt(1, 1), ModelSpec::extended_rrt(3, 2),
                                  ModelSpec::extended_rrt(5, 5), ModelSpec::caterpillar(2),
                                  ModelSpec::caterpillar(5)}) {
      RngStream rng(99, 3);
      GrowthState s = init_state(spec);
      StepRecord record;
      const std::uint32_t parents = spec.kind() == ModelKind::ExtendedRrt ? spec.m() : 1;
      while (s.n < 10'000) {
        const std::vector<Degree> before = s.degrees;
        step(s, rng, record);
        REQUIRE(record.parents.size() == parents);
        std::vector<std::uint32_t> sorted = record.parents;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        for (std::size_t i = 0; i < record.parents.size(); ++i) {
          REQUIRE(s.degrees[record.parents[i]] == before[record.parents[i]] + 1);
          REQUIRE(record.degree_before[i] == before[record.parents[i]]);
        }
        REQUIRE(s.total_degree == degree_sum_closed(spec, s.n));
        REQUIRE(s.total_degree == expected_total_degree(spec, s.n));
        REQUIRE(s.node_count() == node_count_closed(spec, s.n));
      }
      if (spec.kind() == ModelKind::Caterpillar) {
        for (Degree d : s.degrees) CHECK(d >= 1);
        CHECK(s.leaf_count == s.n);
      }
    }
  }

  TEST_CASE("PORT index lies between path and star") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      RngStream rng(seed, 7);
      const std::uint64_t k = 3 + seed % 40;
      const GrowthState s = grow_to(ModelSpec::port(), k, rng);
      CHECK(s.indices.zagreb >= 4 * k - 6);
      CHECK(s.indices.zagreb <= k * (k - 1));
    }
  }

  TEST_CASE("trajectories are determined by seed and stream") {
    for (const ModelSpec& spec : {ModelSpec::port(), ModelSpec::extended_rrt(4, 3), ModelSpec::caterpillar(3)}) {
      RngStream a(12345, 17), b(12345, 17), c(12345, 18);
      const GrowthState sa = grow_to(spec, 2000, a);
      const GrowthState sb = grow_to(spec, 2000, b);
      const GrowthState sc = grow_to(spec, 2000, c);
      CHECK(sa.degrees == sb.degrees);
      CHECK(sa.indices == sb.indices);
      CHECK(sa.degrees != sc.degrees);
    }
  }

  TEST_CASE("observer sees every step") {
    RngStream rng(3, 3);
    std::uint64_t calls = 0;
    std::uint64_t last_time = 0;
    grow_to(ModelSpec::extended_rrt(3, 2), 50, rng, [&](const StepRecord& r) {
      ++calls;
      last_time = r.time;
    });
    CHECK(calls == 49);
    CHECK(last_time == 50);
  }

  TEST_CASE("uniform subsets: trivial cases") {
    RngStream rng(5, 5);
    for (int i = 0; i < 100; ++i) {
      auto s = sample_uniform_subset(2, 2, rng);
      std::sort(s.begin(), s.end());
      CHECK(s == std::vector<std::uint32_t>{0, 1});
    }
    CHECK_THROWS_AS(sample_uniform_subset(2, 3, rng), DomainError);

    std::array<int, 3> counts{};
    const int draws = 300'000;
    for (int i = 0; i < draws; ++i) ++counts[sample_uniform_subset(3, 1, rng)[0]];
    const double sigma = std::sqrt(draws * (1.0 / 3) * (2.0 / 3));
    for (int c : counts) CHECK(std::abs(c - draws / 3.0) < 4 * sigma);

    GrowthState s = init_state(ModelSpec::extended_rrt(2, 2));
    const StepRecord r = step(s, rng);
    std::vector<std::uint32_t> p = r.parents;
    std::sort(p.begin(), p.end());
    CHECK(p == std::vector<std::uint32_t>{0, 1});
  }

  TEST_CASE("uniform 2-subsets of 5 pass chi-square at 0.001") {
    RngStream rng(20240601, 0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
    const std::uint64_t draws = 1'000'000;
    for (std::uint64_t i = 0; i < draws; ++i) {
      auto s = sample_uniform_subset(5, 2, rng);
      if (s[0] > s[1]) std::swap(s[0], s[1]);
      ++counts[{s[0], s[1]}];
    }
    REQUIRE(counts.size() == 10);
    const double expected = draws / 10.0;
    double chi2 = 0;
    for (const auto& [subset, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < kChiSquare999Df9);
  }

  TEST_CASE("degree-proportional sampling") {
    RngStream rng(77, 1);
    const std::vector<std::uint64_t> zero{0, 0};
    CHECK_THROWS_AS(sample_degree_proportional(zero, rng), DegenerateDistributionError);

    const std::uint64_t draws = 1'000'000;
    auto frequencies_ok = [&](const std::vector<std::uint64_t>& w) {
      std::vector<std::uint64_t> counts(w.size());
      for (std::uint64_t i = 0; i < draws; ++i) ++counts[sample_degree_proportional(w, rng)];
      std::uint64_t total = 0;
      for (auto x : w) total += x;
      bool ok = true;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const double p = static_cast<double>(w[j]) / static_cast<double>(total);
        const double sigma = std::sqrt(draws * p * (1 - p));
        ok = ok && std::abs(static_cast<double>(counts[j]) - draws * p) < 4 * sigma;
      }
      return ok;
    };
    CHECK(frequencies_ok({1, 1}));
    CHECK(frequencies_ok({2, 1}));
    CHECK(frequencies_ok({3, 2, 1}));
  }

  TEST_CASE("caterpillar spine weights after the first leaf") {
    RngStream rng(4, 4);
    std::uint64_t first_parent_hits = 0;
    const std::uint64_t trials = 300'000;
    for (std::uint64_t i = 0; i < trials; ++i) {
      GrowthState s = init_state(ModelSpec::caterpillar(2));
      s.degrees = {2, 1};
      s.total_degree = 3;
      s.leaf_count = 1;
      s.n = 1;
      s.indices = compute_bundle(s.degrees, s.leaf_count, s.n);
      if (step(s, rng).parents[0] == 0) ++first_parent_hits;
    }
    const double sigma = std::sqrt(trials * (2.0 / 3) * (1.0 / 3));
    CHECK(std::abs(first_parent_hits - trials * 2.0 / 3) < 4 * sigma);
  }

  TEST_CASE("RNG bounded draws stay in range and are reproducible") {
    RngStream a(1, 2), b(1, 2);
    for (int i = 0; i < 10'000; ++i) {
      const std::uint64_t bound = 1 + static_cast<std::uint64_t>(i) * 7919;
      const auto x = a.below(bound);
      CHECK(x < bound);
      CHECK(x == b.below(bound));
    }
  }
}
