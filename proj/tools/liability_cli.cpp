// Command-line front end for batch computations: scenario sweeps, efficiency
// region maps, randomized property verification, and threshold lookups.
// Set LIABILITY_THREADS to parallelize sweep grids (default 1); outputs are
// byte-identical regardless of thread count.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "liability/oracle.hpp"
#include "liability/sweep.hpp"

namespace {

void print_kv(const char* key, const std::string& value) {
  std::printf("%-14s %s\n", key, value.c_str());
}

void print_kv(const char* key, double value) {
  print_kv(key, liability::detail::fmt_g(value));
}

int run_sweep_command(const std::string& scenario_path,
                      const std::string& out_path) {
  const liability::Scenario sc = liability::load_scenario(scenario_path);
  const liability::SweepTable table = liability::run_sweep(sc);
  liability::write_text_file(out_path, liability::sweep_csv(table));

  long long jumps = 0, regime_changes = 0, markers = 0;
  for (const auto& row : table.rows) {
    jumps += row.jump ? 1 : 0;
    regime_changes += row.regime_change ? 1 : 0;
    markers += row.marker.empty() ? 0 : 1;
  }
  std::printf(
      "wrote %s: axis=%s points=%zu jumps=%lld regime-changes=%lld "
      "marked-points=%lld\n",
      out_path.c_str(), liability::to_string(sc.axis), table.rows.size(),
      jumps, regime_changes, markers);
  return 0;
}

int run_region_map_command(double beta, double step,
                           const std::string& out_path) {
  const liability::RegionMap map = liability::region_map(beta, step);
  liability::write_text_file(out_path, liability::region_map_csv(map));
  std::printf("wrote %s: cells=%zu locus-points=%zu\n", out_path.c_str(),
              map.cells.size(), map.coincidence_locus.size());
  return 0;
}

int run_verify_command(long long trials, std::uint64_t seed) {
  bool all_passed = true;
  for (const std::string& id : liability::property_ids()) {
    const liability::PropertyReport rep =
        liability::property_sweep(id, trials, seed);
    all_passed = all_passed && rep.passed;
    std::printf("%s  %-32s trials=%lld failures=%lld\n",
                rep.passed ? "PASS" : "FAIL", rep.property.c_str(),
                rep.trials, rep.failures);
    if (!rep.note.empty()) std::printf("      %s\n", rep.note.c_str());
    if (!rep.passed)
      std::printf("      first counterexample: %s\n",
                  rep.counterexample.c_str());
  }
  return all_passed ? 0 : 1;
}

int run_thresholds_command(double beta, double p_y, double p_x,
                           bool have_px) {
  print_kv("beta", beta);
  print_kv("p_y", p_y);

  const auto px_star = liability::critical_px(beta, p_y);
  if (px_star) {
    print_kv("critical_px", *px_star);
    if (!have_px) {
      // No precision supplied: report the fines where they coincide.
      const liability::InformationEnvironment env(beta, *px_star, p_y);
      print_kv("fine_u", liability::fine_u(env));
      print_kv("fine_b", liability::fine_b(env));
    }
  } else {
    print_kv("critical_px", std::string("none (fine gap does not change sign)"));
  }

  if (have_px) {
    print_kv("p_x", p_x);
    const auto py_star = liability::critical_py(beta, p_x);
    if (py_star)
      print_kv("critical_py", *py_star);
    else
      print_kv("critical_py",
               std::string("none (fine gap does not change sign)"));
    const liability::InformationEnvironment env(beta, p_x, p_y);
    print_kv("fine_u", liability::fine_u(env));
    print_kv("fine_b", liability::fine_b(env));
    print_kv("delta", liability::delta(env));
    print_kv("case", std::string(to_string(liability::classify_case(env))));
  }
  return 0;
}

// Option values go through the scenario-file number parser so flags accept
// exact fractions ("9/13") as well as decimals; the scenario-specific
// message prefix is dropped for flag errors.
double parse_real(const std::string& raw, const char* what) {
  try {
    return liability::detail::parse_number(raw, what);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    const std::string prefix = "scenario: ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    throw std::invalid_argument(msg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Liability-design toolkit: optimal punishment caps, parameter sweeps, "
      "region maps, and randomized property verification"};
  app.require_subcommand(1);

  std::string scenario_path, out_path;
  auto* sweep = app.add_subcommand(
      "sweep", "Run a scenario file and write the sweep table as CSV");
  sweep->add_option("scenario", scenario_path, "scenario file path")
      ->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  std::string beta_raw, step_raw, py_raw, px_raw;
  std::string map_out;
  auto* region = app.add_subcommand(
      "region-map",
      "Map efficiency cases and the fine-coincidence locus over precisions");
  region
      ->add_option("--beta", beta_raw,
                   "prior probability of the good state (decimal or "
                   "fraction like 9/13)")
      ->required();
  region->add_option("--step", step_raw, "grid step in both precisions")
      ->required();
  region->add_option("--out", map_out, "output CSV path")->required();

  long long trials = 500;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  auto* verify = app.add_subcommand(
      "verify", "Run every registered randomized property suite");
  verify->add_option("--trials", trials, "trials per property (default 500)");
  verify->add_option("--seed", seed, "base seed for the trial streams");

  auto* thresholds = app.add_subcommand(
      "show-thresholds",
      "Print the critical precisions and critical fines for a base point");
  thresholds
      ->add_option("--beta", beta_raw,
                   "prior probability of the good state (decimal or "
                   "fraction like 9/13)")
      ->required();
  auto* py_opt =
      thresholds->add_option("--py", py_raw, "unverifiable-signal precision");
  py_opt->required();
  auto* px_opt = thresholds->add_option(
      "--px", px_raw, "verifiable-signal precision (optional: adds the "
                      "mirrored critical precision and the fines at the "
                      "point)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_command(scenario_path, out_path);
    if (region->parsed())
      return run_region_map_command(parse_real(beta_raw, "--beta"),
                                    parse_real(step_raw, "--step"), map_out);
    if (verify->parsed()) return run_verify_command(trials, seed);
    if (thresholds->parsed())
      return run_thresholds_command(
          parse_real(beta_raw, "--beta"), parse_real(py_raw, "--py"),
          px_opt->count() > 0 ? parse_real(px_raw, "--px") : 0.75,
          px_opt->count() > 0);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
