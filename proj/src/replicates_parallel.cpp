#include <omp.h>

#include <exception>
#include <mutex>

#include "zagreb/errors.hpp"
#include "zagreb/replicates.hpp"

namespace zagreb {

SampleSummary run_replicates(const ReplicateConfig& config) {
  if (config.replicates < 2) throw DomainError("run_replicates needs R >= 2");
  if (config.workers < 1) throw DomainError("workers must be >= 1");
  if (config.n < config.model.initial_time()) {
    throw DomainError("n is below the initial time of " + config.model.name());
  }
  const double start = omp_get_wtime();

  SampleSummary summary;
  summary.model = config.model;
  summary.n = config.n;
  summary.replicates = config.replicates;
  summary.seed = config.seed;
  if (config.keep_samples) summary.samples.resize(config.replicates);

  const auto total = static_cast<std::int64_t>(config.replicates);
  std::vector<PowerSums> partial(static_cast<std::size_t>(config.workers));
  std::exception_ptr failure;
  std::mutex failure_mutex;

#pragma omp parallel num_threads(config.workers)
  {
    PowerSums local;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < total; ++i) {
      try {
        const u128 z = simulate_zagreb(config.model, config.n, config.seed, static_cast<std::uint64_t>(i));
        if (config.keep_samples) summary.samples[static_cast<std::size_t>(i)] = z;
        local.add(z);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
  }
  if (failure) std::rethrow_exception(failure);

  for (const PowerSums& p : partial) summary.sums.merge(p);
  if (summary.sums.count != config.replicates) {
    throw std::runtime_error("replicate count mismatch after merge");
  }
  summary.wall_time = omp_get_wtime() - start;
  return summary;
}

}  // namespace zagreb
