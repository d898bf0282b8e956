#include "zagreb/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "zagreb/closed_forms.hpp"
#include "zagreb/errors.hpp"
#include "zagreb/moments.hpp"
#include "zagreb/oracle.hpp"
#include "zagreb/replicates.hpp"
#include "zagreb/report.hpp"
#include "zagreb/statistics.hpp"

namespace zagreb {

namespace {

constexpr std::uint64_t kMinKsSamples = 100;

struct RunConfig {
  std::string model_name;
  std::optional<std::uint32_t> m0;
  std::optional<std::uint32_t> m;
  std::uint64_t n = 0;
  std::uint64_t n_max = 0;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::uint64_t every = 1;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  double gate = 4.0;
  std::uint64_t float_threshold = 1'000'000;
  std::uint64_t budget = kHistoryBudget;
  std::string output;
  std::string format = "csv";
  std::string samples_path;
};

ModelSpec resolve_model(const RunConfig& c) {
  switch (parse_model_kind(c.model_name)) {
    case ModelKind::ExtendedRrt:
      if (!c.m0 || !c.m) throw DomainError("ext-rrt requires --m0 and --m");
      return ModelSpec::extended_rrt(*c.m0, *c.m);
    case ModelKind::Port:
      if (c.m0 || c.m) throw DomainError("port takes no --m0 or --m");
      return ModelSpec::port();
    case ModelKind::Caterpillar:
      if (c.m0) throw DomainError("caterpillar takes no --m0");
      if (!c.m) throw DomainError("caterpillar requires --m");
      return ModelSpec::caterpillar(*c.m);
  }
  throw DomainError("unknown model");
}

void require_time(const ModelSpec& model, std::uint64_t n, const char* flag) {
  if (n == 0) throw DomainError(std::string(flag) + " must be positive");
  if (n < model.initial_time()) {
    throw DomainError(std::string(flag) + " is below the initial time " +
                      std::to_string(model.initial_time()) + " of " + model.name());
  }
}

ReplicateConfig replicate_config(const ModelSpec& model, const RunConfig& c) {
  require_time(model, c.n, "-n");
  if (c.replicates < 2) throw DomainError("-R must be at least 2");
  if (c.workers < 1) throw DomainError("--workers must be at least 1");
  ReplicateConfig rc;
  rc.model = model;
  rc.n = c.n;
  rc.replicates = c.replicates;
  rc.seed = c.seed;
  rc.workers = c.workers;
  rc.keep_samples = !c.samples_path.empty() ||
                    (model.kind() == ModelKind::ExtendedRrt && c.replicates >= kMinKsSamples);
  return rc;
}

/// One line per replicate: index, Z and, for ext-rrt, the CLT-standardized value.
void write_samples(const SampleSummary& summary, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open samples path '" + path + "' for writing");
  const bool standardize = summary.model.kind() == ModelKind::ExtendedRrt;
  file << (standardize ? "replicate,Z,standardized\n" : "replicate,Z\n");
  for (std::size_t i = 0; i < summary.samples.size(); ++i) {
    file << i << ',' << to_string(summary.samples[i]);
    if (standardize) {
      file << ',' << format_number(standardize_clt(summary.samples[i], summary.n, summary.model.m()), 17);
    }
    file << '\n';
  }
  if (!file) throw std::runtime_error("failed writing samples to '" + path + "'");
}

int finish(const Report& report, const RunConfig& c, std::ostream& out) {
  emit(report, parse_report_format(c.format), c.output, out);
  return report.all_passed() ? kExitOk : kExitGateFailure;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const ModelSpec model = resolve_model(c);
  const ReplicateConfig rc = replicate_config(model, c);
  SampleSummary summary = run_replicates(rc);
  if (!c.samples_path.empty()) write_samples(summary, c.samples_path);
  if (model.kind() == ModelKind::ExtendedRrt && summary.samples.size() >= kMinKsSamples) {
    summary.ks_statistic = ks_normal(standardize_clt(summary.samples, summary.n, model.m()));
  }
  return finish(sample_report(summary), c, out);
}

int cmd_exact(const RunConfig& c, std::ostream& out) {
  const ModelSpec model = resolve_model(c);
  require_time(model, c.n_max, "--n-max");
  if (c.every == 0) throw DomainError("--every must be positive");
  TableOptions options;
  options.float_threshold = c.float_threshold;
  for (std::uint64_t n = model.initial_time(); n <= c.n_max; n += c.every) options.rows.push_back(n);
  if (options.rows.back() != c.n_max) options.rows.push_back(c.n_max);
  return finish(moment_table_report(moment_table(model, c.n_max, options)), c, out);
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const ModelSpec model = resolve_model(c);
  if (c.n < model.initial_time()) throw DomainError("-n is below the initial time of " + model.name());
  return finish(oracle_report(enumerate(model, c.n, c.budget)), c, out);
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const ModelSpec model = resolve_model(c);
  ReplicateConfig rc = replicate_config(model, c);
  rc.keep_samples = false;
  if (!(c.gate > 0)) throw DomainError("--gate must be positive");
  TableOptions options;
  options.rows = {c.n};
  options.float_threshold = c.float_threshold;
  const MomentTable table = moment_table(model, c.n, options);
  const SampleSummary summary = run_replicates(rc);
  return finish(compare_report(table.at(c.n), summary, c.gate), c, out);
}

int cmd_audit(const RunConfig& c, std::ostream& out) {
  const ModelSpec model = resolve_model(c);
  return finish(audit_report(closed_form_audit(model, c.n_lo, c.n_hi)), c, out);
}

void add_model_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model_name, "ext-rrt, port or caterpillar")->required();
  sub->add_option("--m0", c.m0, "initial clique size (ext-rrt)");
  sub->add_option("--m", c.m, "edges per newcomer (ext-rrt) or spine length (caterpillar)");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("-o,--output", c.output, "report path ('-' for stdout)");
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_sampling_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("-n", c.n, "time index")->required();
  sub->add_option("-R,--replicates", c.replicates, "number of replicates")->required();
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--workers", c.workers, "OpenMP worker threads")->envname("ZAGREB_LAB_WORKERS");
  sub->add_option("--float-threshold", c.float_threshold, "last time index iterated exactly");
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.workers = default_workers();

  CLI::App app{"Exact and Monte Carlo moments of Zagreb indices of random trees", "zagreb-lab"};
  app.set_version_flag("--version", ZAGREB_VERSION);
  app.require_subcommand(1);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo moments of Z_n");
  add_model_options(simulate, config);
  add_sampling_options(simulate, config);
  simulate->add_option("--samples", config.samples_path, "also write every replicate's Z to this CSV");
  add_output_options(simulate, config);

  CLI::App* exact = app.add_subcommand("exact", "exact moment table up to n-max");
  add_model_options(exact, config);
  exact->add_option("--n-max", config.n_max, "last time index")->required();
  exact->add_option("--every", config.every, "row spacing");
  exact->add_option("--float-threshold", config.float_threshold, "last time index iterated exactly");
  add_output_options(exact, config);

  CLI::App* oracle = app.add_subcommand("oracle", "exact distribution by enumeration");
  add_model_options(oracle, config);
  oracle->add_option("-n", config.n, "time index")->required();
  oracle->add_option("--budget", config.budget, "maximum number of labeled histories");
  add_output_options(oracle, config);

  CLI::App* compare = app.add_subcommand("compare", "Monte Carlo against exact moments");
  add_model_options(compare, config);
  add_sampling_options(compare, config);
  compare->add_option("--gate", config.gate, "largest accepted |z|");
  add_output_options(compare, config);

  CLI::App* audit = app.add_subcommand("audit", "closed forms against the recurrences");
  add_model_options(audit, config);
  audit->add_option("--n-lo", config.n_lo, "first time index")->required();
  audit->add_option("--n-hi", config.n_hi, "last time index")->required();
  add_output_options(audit, config);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("zagreb-lab");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config, out);
    if (exact->parsed()) return cmd_exact(config, out);
    if (oracle->parsed()) return cmd_oracle(config, out);
    if (compare->parsed()) return cmd_compare(config, out);
    if (audit->parsed()) return cmd_audit(config, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

int parse_and_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace zagreb
