// Acceptance gates 1-9. Every criterion prints exactly one line
// "criterion <k>: PASS|FAIL <summary>"; indented lines before it are detail.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "zagreb/cli.hpp"
#include "zagreb/closed_forms.hpp"
#include "zagreb/moments.hpp"
#include "zagreb/oracle.hpp"
#include "zagreb/replicates.hpp"
#include "zagreb/statistics.hpp"

using namespace zagreb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string summary;
};

void detail(const std::string& text) { std::cout << "  " << text << '\n'; }

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

ReplicateConfig replicate_config(const ModelSpec& model, std::uint64_t n, std::uint64_t r, std::uint64_t seed,
                                 bool keep_samples) {
  ReplicateConfig c;
  c.model = model;
  c.n = n;
  c.replicates = r;
  c.seed = seed;
  c.workers = workers();
  c.keep_samples = keep_samples;
  return c;
}

// 1. Oracle moments equal engine moments as rationals; under a minute.
Outcome criterion_1() {
  const auto start = Clock::now();
  Outcome o;
  int comparisons = 0;
  auto expect = [&](bool equal, const std::string& what) {
    ++comparisons;
    if (!equal) {
      o.pass = false;
      detail("mismatch: " + what);
    }
  };
  for (auto [m0, m] : {std::pair{2u, 1u}, std::pair{3u, 2u}, std::pair{3u, 3u}}) {
    const MomentTable t = ext_rrt_moment_table(m0, m, 6);
    for (std::uint64_t n = 1; n <= 6; ++n) {
      const ExactDistribution d = enumerate(ModelSpec::extended_rrt(m0, m), n);
      const std::string tag = fmt("ext-rrt(%u,%u) n=%llu", m0, m, static_cast<unsigned long long>(n));
      expect(moment(d, IndexKind::Z, 1) == t.at(n).mean_z, tag + " E[Z]");
      expect(moment(d, IndexKind::Z, 2) == t.at(n).second_z, tag + " E[Z^2]");
    }
  }
  const MomentTable port = port_moment_table(9);
  for (std::uint64_t n = 2; n <= 9; ++n) {
    const ExactDistribution d = enumerate(ModelSpec::port(), n);
    const MomentRow& r = port.at(n);
    const std::string tag = fmt("port n=%llu", static_cast<unsigned long long>(n));
    expect(moment(d, IndexKind::Z, 1) == r.mean_z, tag + " E[Z]");
    expect(moment(d, IndexKind::Z, 2) == r.second_z, tag + " E[Z^2]");
    expect(moment(d, IndexKind::Y, 1) == *r.mean_y, tag + " E[Y]");
    expect(moment(d, IndexKind::X, 1) == *r.mean_x, tag + " E[X]");
    expect(mixed_moment(d, 1, 1) == *r.mixed_zy, tag + " E[ZY]");
    expect(moment(d, IndexKind::Z, 3) == *r.third_z, tag + " E[Z^3]");
  }
  for (std::uint32_t m : {2u, 3u}) {
    const MomentTable t = caterpillar_moment_table(m, 8);
    for (std::uint64_t n = 0; n <= 8; ++n) {
      const ExactDistribution d = enumerate(ModelSpec::caterpillar(m), n);
      const std::string tag = fmt("caterpillar(%u) n=%llu", m, static_cast<unsigned long long>(n));
      expect(moment(d, IndexKind::Z, 1) == t.at(n).mean_z, tag + " E[Z]");
      expect(moment(d, IndexKind::Z, 2) == t.at(n).second_z, tag + " E[Z^2]");
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60) o.pass = false;
  o.summary = fmt("%d exact comparisons, runtime %.2fs (limit 60s)", comparisons, elapsed);
  return o;
}

// 2. PORT closed forms equal the recurrences exactly.
Outcome criterion_2() {
  Outcome o;
  const MomentTable t = port_moment_table(1000);
  int mean_bad = 0, y_bad = 0, x_bad = 0;
  for (const MomentRow& r : t.rows) {
    if (r.mean_z != port_mean_closed(r.n)) ++mean_bad;
    if (r.n <= 500) {
      if (*r.mean_y != port_cubic_closed(r.n)) ++y_bad;
      if (*r.mean_x != port_quartic_closed(r.n)) ++x_bad;
    }
  }
  o.pass = mean_bad == 0 && y_bad == 0 && x_bad == 0;
  o.summary = fmt("mismatches: E[Z] %d/999 (n=2..1000), E[Y] %d/499, E[X] %d/499 (n=2..500)", mean_bad, y_bad,
                  x_bad);
  return o;
}

// 3. RRT variance / n in [7.8, 8.2] at n = 10^5; under a minute.
Outcome criterion_3() {
  const auto start = Clock::now();
  const std::uint64_t n = 100'000;
  const MomentTable t = ext_rrt_moment_table(1, 1, n, TableOptions{{n}});
  const double ratio = t.at(n).var_z.get_d() / static_cast<double>(n);
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = ratio >= 7.8 && ratio <= 8.2 && elapsed < 60;
  o.summary = fmt("Var[Z_n]/n = %.6f at n=1e5 (gate [7.8, 8.2]), runtime %.2fs (limit 60s)", ratio, elapsed);
  return o;
}

// 4. Extended-RRT variance / n within 5% of 4 m^2 (m + 1) at n = 10^5.
Outcome criterion_4() {
  const std::uint64_t n = 100'000;
  Outcome o;
  std::ostringstream summary;
  for (auto [m0, m] : {std::pair{3u, 2u}, std::pair{5u, 3u}}) {
    const MomentTable t = ext_rrt_moment_table(m0, m, n, TableOptions{{n}});
    const double ratio = t.at(n).var_z.get_d() / static_cast<double>(n);
    const double target = 4.0 * m * m * (m + 1);
    const double rel = ratio / target - 1;
    if (std::abs(rel) >= 0.05) o.pass = false;
    summary << fmt("(m0=%u,m=%u) Var/n=%.4f vs %.0f (%+.3f%%); ", m0, m, ratio, target, 100 * rel);
  }
  o.summary = summary.str() + "gate 5%";
  return o;
}

// 5. CLT gate for ext-rrt(3, 2), n = 10^4, R = 10^4.
Outcome criterion_5() {
  const auto start = Clock::now();
  const std::uint64_t n = 10'000, r = 10'000, seed = 20240501;
  const std::uint32_t m0 = 3, m = 2;
  const SampleSummary s = run_replicates(replicate_config(ModelSpec::extended_rrt(m0, m), n, r, seed, true));
  const std::vector<double> std_samples = standardize_clt(s.samples, n, m);
  double mean = 0;
  for (double x : std_samples) mean += x;
  mean /= static_cast<double>(r);
  double var = 0;
  for (double x : std_samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(r - 1);
  const double d = ks_normal(std_samples);

  const CltParams clt = clt_params(m, n);
  const MomentRow exact = ext_rrt_moment_table(m0, m, n, TableOptions{{n}}).at(n);
  detail(fmt("exact standardized mean (E[Z_n] - %.0f) / %.4f = %.6f", clt.centering, clt.scale,
             (exact.mean_z.get_d() - clt.centering) / clt.scale));
  detail(fmt("exact standardized variance Var[Z_n] / scale^2 = %.6f",
             exact.var_z.get_d() / (clt.scale * clt.scale)));
  detail(fmt("monte carlo: seed=%llu R=%llu runtime %.1fs", static_cast<unsigned long long>(seed),
             static_cast<unsigned long long>(r), seconds_since(start)));
  Outcome o;
  const bool ks_ok = d < 0.05, mean_ok = std::abs(mean) < 0.05, var_ok = var >= 0.9 && var <= 1.1;
  o.pass = ks_ok && mean_ok && var_ok;
  o.summary = fmt("KS D=%.5f (<0.05 %s), mean=%.5f (|.|<0.05 %s), variance=%.5f ([0.9,1.1] %s)", d,
                  ks_ok ? "ok" : "FAILED", mean, mean_ok ? "ok" : "FAILED", var, var_ok ? "ok" : "FAILED");
  return o;
}

// 6. PORT skewness: (a) engine vs oracle at n = 8, (b) positive and
// increasing on {10, 50, 100, 500, 1000}, (c) MC at n = 5000 exceeds 0.8.
Outcome criterion_6() {
  const ExactDistribution d = enumerate(ModelSpec::port(), 8);
  const Rational mean = moment(d, IndexKind::Z, 1);
  const Rational second = moment(d, IndexKind::Z, 2);
  const Rational third = moment(d, IndexKind::Z, 3);
  const mpf_class oracle_skew =
      standardized_third_moment(third - 3 * mean * second + 2 * mean * mean * mean, second - mean * mean);
  const mpf_class engine_skew = port_skewness(8);
  const mpf_class rel_diff = abs(engine_skew - oracle_skew) / abs(oracle_skew);
  const bool a_ok = rel_diff < 5e-13;
  detail(fmt("(a) n=8 engine %.15f oracle %.15f relative difference %.3e (gate: 12 significant digits) %s",
             engine_skew.get_d(), oracle_skew.get_d(), rel_diff.get_d(), a_ok ? "ok" : "FAILED"));

  bool b_ok = true;
  double previous = -1;
  std::ostringstream trend;
  for (std::uint64_t n : {10, 50, 100, 500, 1000}) {
    const double s = port_skewness(n).get_d();
    trend << fmt("S(%llu)=%.6f ", static_cast<unsigned long long>(n), s);
    if (!(s > 0) || !(s > previous)) b_ok = false;
    previous = s;
  }
  detail("(b) " + trend.str() + (b_ok ? "ok" : "FAILED: not increasing"));

  const SampleSummary s = run_replicates(replicate_config(ModelSpec::port(), 5000, 10'000, 20240502, false));
  const double mc = s.skewness();
  const bool c_ok = mc > 0.8;
  detail(fmt("(c) monte carlo n=5000 R=1e4 skewness %.5f (SE %.5f normal theory, %.5f delta method; exact %.5f; "
             "gate > 0.8) %s",
             mc, s.se_skewness(), s.se_skewness_robust(), port_skewness(5000).get_d(), c_ok ? "ok" : "FAILED"));

  Outcome o;
  o.pass = a_ok && b_ok && c_ok;
  o.summary = fmt("(a) %s, (b) %s, (c) %s", a_ok ? "pass" : "fail", b_ok ? "pass" : "fail", c_ok ? "pass" : "fail");
  return o;
}

// 7. Caterpillar m = 2: Var * 90 / n^4 in [1.8, 2.2] at n = 10^4; MC
// variance at n = 2000, R = 10^4 within 15% of the engine.
Outcome criterion_7() {
  const std::uint64_t n = 10'000;
  const MomentTable big = caterpillar_moment_table(2, n, TableOptions{{n}});
  const double nd = static_cast<double>(n);
  const double scaled = big.at(n).var_z.get_d() * 90 / (nd * nd * nd * nd);
  const bool order_ok = scaled >= 1.8 && scaled <= 2.2;

  const std::uint64_t n_mc = 2000;
  const Rational exact_var = caterpillar_moment_table(2, n_mc, TableOptions{{n_mc}}).at(n_mc).var_z;
  const SampleSummary s = run_replicates(replicate_config(ModelSpec::caterpillar(2), n_mc, 10'000, 20240503, false));
  const double rel = s.variance().get_d() / exact_var.get_d() - 1;
  const bool mc_ok = std::abs(rel) <= 0.15;

  Outcome o;
  o.pass = order_ok && mc_ok;
  o.summary = fmt("Var*90/n^4=%.5f at n=1e4 (gate [1.8,2.2]); MC variance at n=2000 off by %+.2f%% (gate 15%%)",
                  scaled, 100 * rel);
  return o;
}

// 8. Caterpillar mean delta equals 2(2m-3)/((2m-1)(m-1)) exactly.
Outcome criterion_8() {
  Outcome o;
  std::ostringstream summary;
  for (std::uint32_t m : {2u, 3u, 4u}) {
    const AuditReport audit = closed_form_audit(ModelSpec::caterpillar(m), 0, 1000);
    const Rational expected = caterpillar_mean_offset(m);
    int checked = 0, bad = 0;
    for (const AuditEntry& e : audit.entries) {
      if (e.quantity != "mean_Z") continue;
      ++checked;
      if (!e.delta || *e.delta != expected) ++bad;
    }
    if (bad != 0 || checked != 1001) o.pass = false;
    summary << fmt("m=%u delta=%s (%d/%d rows differ); ", m, to_fraction_string(expected).c_str(), bad, checked);
  }
  o.summary = summary.str() + "n=0..1000";
  return o;
}

// 9. compare twice with the same seed and different worker counts.
Outcome criterion_9() {
  Outcome o;
  std::ostringstream summary;
  struct Case {
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{
      {{"compare", "--model", "ext-rrt", "--m0", "3", "--m", "2", "-n", "2000", "-R", "4000", "--seed", "99"}},
      {{"compare", "--model", "port", "-n", "1000", "-R", "4000", "--seed", "99"}},
      {{"compare", "--model", "caterpillar", "--m", "3", "-n", "1000", "-R", "4000", "--seed", "99"}},
  };
  for (const Case& c : cases) {
    for (const std::string format : {"csv", "json"}) {
      std::string outputs[2];
      int codes[2];
      const char* worker_counts[2] = {"1", "4"};
      for (int k = 0; k < 2; ++k) {
        std::vector<std::string> args = c.args;
        args.insert(args.end(), {"--workers", worker_counts[k], "--format", format});
        std::ostringstream out, err;
        codes[k] = run_cli(args, out, err);
        outputs[k] = out.str();
      }
      bool same;
      if (format == "csv") {
        same = outputs[0] == outputs[1];
      } else {
        // wall_time is a measurement of the run, not part of its result.
        auto a = nlohmann::ordered_json::parse(outputs[0]);
        auto b = nlohmann::ordered_json::parse(outputs[1]);
        a["metadata"].erase("wall_time");
        b["metadata"].erase("wall_time");
        same = a.dump() == b.dump();
      }
      const bool ok = same && codes[0] == codes[1] && codes[0] != kExitUsage && codes[0] != kExitRuntime;
      if (!ok) o.pass = false;
      summary << c.args[2] << '/' << format << (same ? " identical" : " DIFFERENT") << "; ";
    }
  }
  o.summary = summary.str() + "workers 1 vs 4 (JSON compared without metadata.wall_time)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance gates"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion numbers (default: all)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  bool all = true;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
