#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zagreb/indices.hpp"
#include "zagreb/rng.hpp"

namespace zagreb {

enum class ModelKind { ExtendedRrt, Port, Caterpillar };

/// Which growth process to run and its parameters.
///
///  - ExtendedRrt(m0, m): starts from an m0-clique; every newcomer links to a
///    uniformly random m-subset of the existing nodes. Requires 1 <= m <= m0.
///  - Port: plane-oriented recursive tree, parent chosen proportionally to
///    degree.
///  - Caterpillar(m): spine path of m >= 2 nodes; every newcomer is a leaf
///    attached to a spine node chosen proportionally to its degree.
class ModelSpec {
 public:
  static ModelSpec extended_rrt(std::uint32_t m0, std::uint32_t m);
  static ModelSpec port();
  static ModelSpec caterpillar(std::uint32_t m);

  ModelKind kind() const noexcept { return kind_; }
  std::uint32_t m0() const noexcept { return m0_; }
  /// Edges per newcomer for ExtendedRrt, spine length for Caterpillar, 1 for Port.
  std::uint32_t m() const noexcept { return m_; }

  /// Time index of the genesis state: 1 (ExtendedRrt), 2 (Port), 0 (Caterpillar).
  std::uint64_t initial_time() const noexcept;

  /// "ext-rrt", "port" or "caterpillar".
  std::string name() const;
  /// "m0=3;m=2", "" or "m=2".
  std::string params() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(ModelKind kind, std::uint32_t m0, std::uint32_t m) : kind_(kind), m0_(m0), m_(m) {}

  ModelKind kind_;
  std::uint32_t m0_;
  std::uint32_t m_;
};

/// Parses the CLI spelling of a model name.
ModelKind parse_model_kind(const std::string& name);

struct GrowthState {
  ModelSpec spec = ModelSpec::port();
  std::uint64_t n = 0;
  /// One entry per node, or the spine degrees for a caterpillar.
  std::vector<Degree> degrees;
  /// Caterpillar leaves (always degree 1); zero for the other models.
  std::uint64_t leaf_count = 0;
  /// Sum of `degrees` (the spine total for a caterpillar).
  std::uint64_t total_degree = 0;
  IndexBundle indices;

  // Sampling support. Port: both endpoints of every edge, so a uniform entry
  // is a degree-proportional node. ExtendedRrt: node permutation reused by
  // the partial shuffle.
  std::vector<std::uint32_t> endpoints;
  std::vector<std::uint32_t> order;

  std::uint64_t node_count() const noexcept { return degrees.size() + leaf_count; }
};

struct StepRecord {
  std::uint64_t time = 0;
  std::vector<std::uint32_t> parents;
  std::vector<Degree> degree_before;
};

using StepObserver = std::function<void(const StepRecord&)>;

GrowthState init_state(const ModelSpec& spec);

/// Advances the state by one newcomer, filling `record` (capacity reused).
void step(GrowthState& state, RngStream& rng, StepRecord& record);
StepRecord step(GrowthState& state, RngStream& rng);

/// Grows a fresh state to time n_target.
GrowthState grow_to(const ModelSpec& spec, std::uint64_t n_target, RngStream& rng,
                    const StepObserver& observer = {});

/// Uniformly random m-subset of {0, ..., N-1}, by partial Fisher-Yates.
std::vector<std::uint32_t> sample_uniform_subset(std::uint32_t population, std::uint32_t m,
                                                 RngStream& rng);

/// Index j with probability weights[j] / sum(weights), by cumulative scan.
std::size_t sample_degree_proportional(std::span<const std::uint64_t> weights, RngStream& rng);

/// Closed-form sum of degrees at time n (spine total for a caterpillar).
std::uint64_t expected_total_degree(const ModelSpec& spec, std::uint64_t n);

}  // namespace zagreb
