#include <chrono>

#include "zagreb/errors.hpp"
#include "zagreb/replicates.hpp"

namespace zagreb {

SampleSummary run_replicates_serial(const ReplicateConfig& config) {
  if (config.replicates < 2) throw DomainError("run_replicates needs R >= 2");
  if (config.n < config.model.initial_time()) {
    throw DomainError("n is below the initial time of " + config.model.name());
  }
  const auto start = std::chrono::steady_clock::now();

  SampleSummary summary;
  summary.model = config.model;
  summary.n = config.n;
  summary.replicates = config.replicates;
  summary.seed = config.seed;
  if (config.keep_samples) summary.samples.resize(config.replicates);

  for (std::uint64_t i = 0; i < config.replicates; ++i) {
    const u128 z = simulate_zagreb(config.model, config.n, config.seed, i);
    if (config.keep_samples) summary.samples[i] = z;
    summary.sums.add(z);
  }

  summary.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace zagreb
