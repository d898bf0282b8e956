#include "zagreb/model.hpp"

#include <numeric>
#include <utility>

#include "zagreb/errors.hpp"

namespace zagreb {

ModelSpec ModelSpec::extended_rrt(std::uint32_t m0, std::uint32_t m) {
  if (m0 < 1 || m < 1) throw DomainError("ext-rrt requires m0 >= 1 and m >= 1");
  if (m > m0) {
    throw DomainError("ext-rrt requires m <= m0 (got m=" + std::to_string(m) +
                      ", m0=" + std::to_string(m0) + ")");
  }
  return ModelSpec(ModelKind::ExtendedRrt, m0, m);
}

ModelSpec ModelSpec::port() { return ModelSpec(ModelKind::Port, 1, 1); }

ModelSpec ModelSpec::caterpillar(std::uint32_t m) {
  if (m < 2) throw DomainError("caterpillar requires a spine of m >= 2 nodes");
  return ModelSpec(ModelKind::Caterpillar, 0, m);
}

std::uint64_t ModelSpec::initial_time() const noexcept {
  switch (kind_) {
    case ModelKind::ExtendedRrt: return 1;
    case ModelKind::Port: return 2;
    case ModelKind::Caterpillar: return 0;
  }
  return 0;
}

std::string ModelSpec::name() const {
  switch (kind_) {
    case ModelKind::ExtendedRrt: return "ext-rrt";
    case ModelKind::Port: return "port";
    case ModelKind::Caterpillar: return "caterpillar";
  }
  return {};
}

std::string ModelSpec::params() const {
  switch (kind_) {
    case ModelKind::ExtendedRrt: return "m0=" + std::to_string(m0_) + ";m=" + std::to_string(m_);
    case ModelKind::Port: return "";
    case ModelKind::Caterpillar: return "m=" + std::to_string(m_);
  }
  return {};
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "ext-rrt") return ModelKind::ExtendedRrt;
  if (name == "port") return ModelKind::Port;
  if (name == "caterpillar") return ModelKind::Caterpillar;
  throw DomainError("unknown model '" + name + "' (expected ext-rrt, port or caterpillar)");
}

std::uint64_t expected_total_degree(const ModelSpec& spec, std::uint64_t n) {
  switch (spec.kind()) {
    case ModelKind::ExtendedRrt: {
      const std::uint64_t m0 = spec.m0();
      return m0 * (m0 - 1) + 2 * std::uint64_t{spec.m()} * (n - 1);
    }
    case ModelKind::Port: return 2 * (n - 1);
    case ModelKind::Caterpillar: return n + 2 * std::uint64_t{spec.m()} - 2;
  }
  return 0;
}

GrowthState init_state(const ModelSpec& spec) {
  GrowthState state;
  state.spec = spec;
  state.n = spec.initial_time();
  switch (spec.kind()) {
    case ModelKind::ExtendedRrt:
      state.degrees.assign(spec.m0(), spec.m0() - 1);
      state.order.resize(spec.m0());
      std::iota(state.order.begin(), state.order.end(), 0U);
      break;
    case ModelKind::Port:
      // One edge: the selection rule is undefined on a single isolated node.
      state.degrees = {1, 1};
      state.endpoints = {0, 1};
      break;
    case ModelKind::Caterpillar:
      state.degrees.assign(spec.m(), 2);
      state.degrees.front() = 1;
      state.degrees.back() = 1;
      break;
  }
  state.total_degree = std::accumulate(state.degrees.begin(), state.degrees.end(), std::uint64_t{0});
  state.indices = compute_bundle(state.degrees, state.leaf_count, state.n);
  return state;
}

std::vector<std::uint32_t> sample_uniform_subset(std::uint32_t population, std::uint32_t m,
                                                 RngStream& rng) {
  if (m < 1 || m > population) {
    throw DomainError("uniform subset requires 1 <= m <= N (got m=" + std::to_string(m) +
                      ", N=" + std::to_string(population) + ")");
  }
  std::vector<std::uint32_t> pool(population);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

std::size_t sample_degree_proportional(std::span<const std::uint64_t> weights, RngStream& rng) {
  const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total == 0) throw DegenerateDistributionError("all selection weights are zero");
  std::uint64_t u = rng.below(total);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (u < weights[j]) return j;
    u -= weights[j];
  }
  return weights.size() - 1;  // unreachable
}

namespace {

void step_extended_rrt(GrowthState& state, RngStream& rng, StepRecord& record) {
  const auto population = static_cast<std::uint32_t>(state.degrees.size());
  const std::uint32_t m = state.spec.m();
  auto& order = state.order;
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(population - i));
    std::swap(order[i], order[j]);
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t parent = order[i];
    record.parents.push_back(parent);
    record.degree_before.push_back(state.degrees[parent]);
    ++state.degrees[parent];
  }
  state.degrees.push_back(m);
  order.push_back(population);
  state.total_degree += 2 * std::uint64_t{m};
}

void step_port(GrowthState& state, RngStream& rng, StepRecord& record) {
  const auto newcomer = static_cast<std::uint32_t>(state.degrees.size());
  const std::uint32_t parent = state.endpoints[rng.below(state.endpoints.size())];
  record.parents.push_back(parent);
  record.degree_before.push_back(state.degrees[parent]);
  ++state.degrees[parent];
  state.degrees.push_back(1);
  state.endpoints.push_back(parent);
  state.endpoints.push_back(newcomer);
  state.total_degree += 2;
}

void step_caterpillar(GrowthState& state, RngStream& rng, StepRecord& record) {
  std::uint64_t u = rng.below(state.total_degree);
  std::uint32_t parent = 0;
  while (u >= state.degrees[parent]) {
    u -= state.degrees[parent];
    ++parent;
  }
  record.parents.push_back(parent);
  record.degree_before.push_back(state.degrees[parent]);
  ++state.degrees[parent];
  ++state.leaf_count;
  state.total_degree += 1;
}

}  // namespace

void step(GrowthState& state, RngStream& rng, StepRecord& record) {
  record.parents.clear();
  record.degree_before.clear();
  record.time = state.n + 1;
  switch (state.spec.kind()) {
    case ModelKind::ExtendedRrt: step_extended_rrt(state, rng, record); break;
    case ModelKind::Port: step_port(state, rng, record); break;
    case ModelKind::Caterpillar: step_caterpillar(state, rng, record); break;
  }
  const std::uint64_t newcomer_degree = record.parents.size();
  state.indices = apply_attachment_delta(state.indices, record.degree_before, newcomer_degree);
  ++state.n;
}

StepRecord step(GrowthState& state, RngStream& rng) {
  StepRecord record;
  step(state, rng, record);
  return record;
}

GrowthState grow_to(const ModelSpec& spec, std::uint64_t n_target, RngStream& rng,
                    const StepObserver& observer) {
  GrowthState state = init_state(spec);
  if (n_target < state.n) {
    throw DomainError("n_target=" + std::to_string(n_target) + " is below the initial time " +
                      std::to_string(state.n) + " of " + spec.name());
  }
  const std::uint64_t steps = n_target - state.n;
  state.degrees.reserve(state.degrees.size() + (spec.kind() == ModelKind::Caterpillar ? 0 : steps));
  if (spec.kind() == ModelKind::Port) state.endpoints.reserve(state.endpoints.size() + 2 * steps);
  if (spec.kind() == ModelKind::ExtendedRrt) state.order.reserve(state.order.size() + steps);
  StepRecord record;
  while (state.n < n_target) {
    step(state, rng, record);
    if (observer) observer(record);
  }
  return state;
}

}  // namespace zagreb
