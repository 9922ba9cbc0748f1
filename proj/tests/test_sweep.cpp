// Unit tests for the batch front end: scenario parsing, sweep execution
// with jump/regime annotations, CSV emission and its determinism across
// thread counts, and the efficiency-region map with its refined
// fine-coincidence locus.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "liability/sweep.hpp"

using namespace liability;
using Catch::Matchers::ContainsSubstring;

namespace {

Scenario figure_base_scenario() {
  Scenario sc;
  sc.beta = 9.0 / 13.0;
  sc.p_x = 0.75;
  sc.p_y = 0.75;
  sc.gamma = 11.0 / 20.0;
  sc.gamma_bar = 0.5;
  return sc;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string scenario_path(const char* name) {
  return std::string(LIABILITY_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("axis and mode names round trip") {
  for (SweepAxis a : {SweepAxis::PrecisionX, SweepAxis::PrecisionY,
                      SweepAxis::Prior, SweepAxis::AlignedShare})
    REQUIRE(sweep_axis_from_name(to_string(a)) == a);
  REQUIRE_THROWS_AS(sweep_axis_from_name("px"), std::invalid_argument);

  for (SweepMode m :
       {SweepMode::Subjective, SweepMode::Objective, SweepMode::Both})
    REQUIRE(sweep_mode_from_name(to_string(m)) == m);
  REQUIRE_THROWS_AS(sweep_mode_from_name("mixed"), std::invalid_argument);
}

TEST_CASE("scenario files parse sections, fractions, and loss ratios") {
  std::istringstream in(R"(# comment line
[base]
beta = 9/13        # exact fraction
p_x = 0.75
p_y = 0.75
gamma = 0.55
L = 1

[sweep]
axis = p_y
from = 0.6
to = 0.9
step = 0.01

[mode]
mens_rea = both

[output]
columns = minimal
)");
  const Scenario sc = parse_scenario(in);
  REQUIRE(sc.beta == 9.0 / 13.0);
  REQUIRE(sc.gamma_bar == Catch::Approx(0.5).margin(0.0));
  REQUIRE(sc.axis == SweepAxis::PrecisionY);
  REQUIRE(sc.from == 0.6);
  REQUIRE(sc.to == 0.9);
  REQUIRE(sc.step == 0.01);
  REQUIRE(sc.mode == SweepMode::Both);
  REQUIRE(sc.columns == ColumnSet::Minimal);
}

TEST_CASE("scenario parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
  };
  const std::string good =
      "[base]\nbeta=0.7\np_x=0.75\np_y=0.75\ngamma=0.55\ngamma_bar=0.5\n"
      "[sweep]\naxis=p_x\nfrom=0.6\nto=0.9\nstep=0.01\n";

  REQUIRE_NOTHROW(parse(good));
  REQUIRE_THROWS_WITH(parse(good + "[mode]\nmens_rea=psychic\n"),
                      ContainsSubstring("mens_rea"));
  REQUIRE_THROWS_WITH(parse(good + "[output]\ncolumns=wide\n"),
                      ContainsSubstring("columns"));
  REQUIRE_THROWS_WITH(parse("beta=0.7\n" + good),
                      ContainsSubstring("before any"));
  REQUIRE_THROWS_WITH(parse("[bases]\n"), ContainsSubstring("unknown section"));
  REQUIRE_THROWS_WITH(parse("[base\nbeta=0.7\n"),
                      ContainsSubstring("unterminated"));
  REQUIRE_THROWS_WITH(parse(good + "[base]\nbeta=0.8\n"),
                      ContainsSubstring("duplicate key \"beta\""));
  REQUIRE_THROWS_WITH(parse(good + "[mode]\npace=1\n"),
                      ContainsSubstring("unknown key \"pace\""));
  REQUIRE_THROWS_WITH(
      parse(
          "[base]\nbeta=0.7\np_x=0.75\np_y=0.75\ngamma=0.55\n"
          "[sweep]\naxis=p_x\nfrom=0.6\nto=0.9\nstep=0.01\n"),
      ContainsSubstring("gamma_bar or L"));
  REQUIRE_THROWS_WITH(
      parse(
          "[base]\nbeta=0.7\np_x=0.75\np_y=0.75\ngamma=0.55\ngamma_bar=0.5\n"
          "L=1\n[sweep]\naxis=p_x\nfrom=0.6\nto=0.9\nstep=0.01\n"),
      ContainsSubstring("not both"));
  REQUIRE_THROWS_WITH(parse("[base]\nbeta=seven\n"),
                      ContainsSubstring("bad number"));
  REQUIRE_THROWS_WITH(parse("[base]\nbeta=0.7extra\n"),
                      ContainsSubstring("bad number"));
  REQUIRE_THROWS_WITH(parse("[base]\nbeta=1/0\n"),
                      ContainsSubstring("zero denominator"));
  REQUIRE_THROWS_WITH(parse("[base]\nbeta\n"),
                      ContainsSubstring("key = value"));
  REQUIRE_THROWS_WITH(parse("[base]\nbeta=\n"),
                      ContainsSubstring("empty key or value"));
}

TEST_CASE("scenario validation guards domains") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionX;
  sc.from = 0.6;
  sc.to = 0.9;
  sc.step = 0.01;
  REQUIRE_NOTHROW(sc.validate());

  SECTION("step must be positive") {
    sc.step = 0.0;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("range must be ordered") {
    sc.from = 0.9;
    sc.to = 0.6;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("precision sweeps must stay inside the half-one interval") {
    sc.from = 0.45;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.from = 0.6;
    sc.to = 1.0;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("prior sweeps use the unit interval") {
    sc.axis = SweepAxis::Prior;
    sc.from = 0.05;
    sc.to = 0.95;
    REQUIRE_NOTHROW(sc.validate());
    sc.to = 1.0;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SECTION("base parameters are checked") {
    sc.gamma_bar = 1.5;
    REQUIRE_THROWS_AS(sc.validate(), std::invalid_argument);
  }
}

TEST_CASE("bundled scenarios load and describe the figure sweeps") {
  const Scenario a = load_scenario(scenario_path("fig2a.scn"));
  REQUIRE(a.axis == SweepAxis::PrecisionX);
  REQUIRE(a.beta == 9.0 / 13.0);
  REQUIRE(a.p_y == 0.75);
  REQUIRE(a.gamma == 0.55);
  REQUIRE(a.gamma_bar == 0.5);
  REQUIRE(a.from == 0.55);
  REQUIRE(a.to == 0.95);
  REQUIRE(a.step == 0.001);
  REQUIRE(a.mode == SweepMode::Subjective);
  REQUIRE(a.columns == ColumnSet::Full);

  const Scenario b = load_scenario(scenario_path("fig2b.scn"));
  REQUIRE(b.axis == SweepAxis::PrecisionY);
  REQUIRE(b.p_x == 0.75);
  REQUIRE(b.from == 0.60);
  REQUIRE(b.to == 0.90);

  const Scenario c = load_scenario(scenario_path("fig3.scn"));
  REQUIRE(c.axis == SweepAxis::PrecisionY);
  REQUIRE(c.mode == SweepMode::Both);

  REQUIRE_THROWS_AS(load_scenario(scenario_path("missing.scn")),
                    std::runtime_error);
}

TEST_CASE("sweep rows mirror fresh solver invocations") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionX;
  sc.from = 0.74;
  sc.to = 0.76;
  sc.step = 1e-3;
  sc.mode = SweepMode::Both;

  const SweepTable table = run_sweep(sc);
  REQUIRE(table.rows.size() == 21);
  for (const SweepRow& row : table.rows) {
    const InformationEnvironment env = sc.environment_at(row.value);
    const PopulationModel pop = sc.population_at(row.value);
    const EquilibriumSolution sol = solve_optimal(env, pop);
    REQUIRE(row.welfare == sol.welfare);
    REQUIRE(row.f_bar == sol.f_bar);
    REQUIRE(row.regime == to_string(sol.regime));
    REQUIRE(row.fine_gap == delta(env));
    REQUIRE(row.supported);
    REQUIRE(row.has_objective);
    REQUIRE(row.welfare_objective == solve_objective_mensrea(env, pop).welfare);
    REQUIRE(row.welfare_objective <= row.welfare + 1e-12);
  }

  // Exactly one jump, on the pair straddling the critical precision.
  std::vector<std::size_t> jumps;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].jump) jumps.push_back(i);
  REQUIRE(jumps.size() == 1);
  REQUIRE(table.rows[jumps[0]].value == Catch::Approx(0.751).margin(1e-12));
  REQUIRE(table.rows[jumps[0]].welfare <
          table.rows[jumps[0] - 1].welfare);

  const SweepTable again = run_sweep(sc);
  REQUIRE(sweep_csv(again) == sweep_csv(table));
}

TEST_CASE("case-boundary crossings annotate regime changes without jumps") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionX;
  sc.from = 0.56;
  sc.to = 0.59;
  sc.step = 1e-3;

  const SweepTable table = run_sweep(sc);
  long long changes = 0;
  for (const SweepRow& row : table.rows) changes += row.regime_change ? 1 : 0;
  REQUIRE(changes == 1);
  // Welfare is continuous across the efficiency-case boundary: regime
  // annotation fires, the jump heuristic does not.
  for (const SweepRow& row : table.rows) REQUIRE_FALSE(row.jump);
}

TEST_CASE("csv output is stable, aligned, and matches the column set") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionY;
  sc.from = 0.74;
  sc.to = 0.76;
  sc.step = 1e-2;
  sc.mode = SweepMode::Both;

  const SweepTable table = run_sweep(sc);
  const std::string csv = sweep_csv(table);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == table.rows.size() + 1);
  const auto header = split_csv_line(lines[0]);
  for (std::size_t i = 1; i < lines.size(); ++i)
    REQUIRE(split_csv_line(lines[i]).size() == header.size());
  REQUIRE(lines[0] ==
          "p_y,welfare,regime,f_bar,fine_u,fine_b,delta,case,"
          "mix_opportunist,mix_aligned,supported,welfare_objective,"
          "objective_regime,eta1,eta2,regime_change,jump,marker");
  REQUIRE_THAT(lines[2], ContainsSubstring("0.510096153846"));

  sc.columns = ColumnSet::Minimal;
  sc.mode = SweepMode::Subjective;
  const std::string minimal = sweep_csv(run_sweep(sc));
  REQUIRE(split_lines(minimal)[0] ==
          "p_y,welfare,regime,f_bar,regime_change,jump,marker");

  // Unsupported-population points are marked, never fatal.
  Scenario weak = sc;
  weak.gamma = 0.4;  // below the court threshold
  const SweepTable tagged = run_sweep(weak);
  REQUIRE_FALSE(tagged.rows.front().supported);
  REQUIRE_THAT(tagged.rows.front().marker,
               ContainsSubstring("population-unsupported"));
}

TEST_CASE("outside the one-positive-signal case objective columns are marked") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionY;
  sc.from = 0.86;
  sc.to = 0.89;
  sc.step = 1e-2;
  sc.mode = SweepMode::Both;

  const SweepTable table = run_sweep(sc);
  bool saw_marker = false, saw_objective = false;
  for (const SweepRow& row : table.rows) {
    if (row.has_objective) saw_objective = true;
    if (!row.marker.empty()) {
      saw_marker = true;
      REQUIRE_THAT(row.marker, ContainsSubstring("one-positive-case"));
      REQUIRE_FALSE(row.has_objective);
    }
  }
  REQUIRE(saw_marker);
  REQUIRE(saw_objective);

  const std::string csv = sweep_csv(table);
  const auto lines = split_lines(csv);
  const std::size_t width = split_csv_line(lines[0]).size();
  for (std::size_t i = 1; i < lines.size(); ++i)
    REQUIRE(split_csv_line(lines[i]).size() == width);
}

TEST_CASE("thread count honors the environment variable deterministically") {
  REQUIRE(setenv("LIABILITY_THREADS", "3", 1) == 0);
  REQUIRE(thread_count_from_env() == 3);

  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::PrecisionX;
  sc.from = 0.70;
  sc.to = 0.80;
  sc.step = 1e-3;
  const std::string threaded = sweep_csv(run_sweep(sc));

  REQUIRE(setenv("LIABILITY_THREADS", "junk", 1) == 0);
  REQUIRE(thread_count_from_env() == 1);
  REQUIRE(unsetenv("LIABILITY_THREADS") == 0);
  REQUIRE(thread_count_from_env() == 1);

  const std::string serial = sweep_csv(run_sweep(sc));
  REQUIRE(threaded == serial);
}

TEST_CASE("gamma sweeps move the population instead of the environment") {
  Scenario sc = figure_base_scenario();
  sc.axis = SweepAxis::AlignedShare;
  sc.from = 0.52;
  sc.to = 0.96;
  sc.step = 0.04;

  const SweepTable table = run_sweep(sc);
  for (const SweepRow& row : table.rows) {
    const EquilibriumSolution sol = solve_optimal(
        sc.environment_at(row.value), PopulationModel(row.value, 0.5));
    REQUIRE(row.welfare == sol.welfare);
    REQUIRE(row.fine_gap == delta(sc.environment_at(row.value)));
  }
}

TEST_CASE("region map labels cells and refines the coincidence locus") {
  const RegionMap map = region_map(9.0 / 13.0, 0.05);
  REQUIRE(map.cells.size() == 81);  // nine interior points per axis

  bool anchor_found = false;
  for (const auto& [px, py] : map.coincidence_locus) {
    REQUIRE(delta(InformationEnvironment(9.0 / 13.0, px, py)) ==
            Catch::Approx(0.0).margin(1e-9));
    if (std::abs(py - 0.75) <= 1e-12) {
      anchor_found = true;
      REQUIRE(px == Catch::Approx(0.75).margin(1e-9));
    }
  }
  REQUIRE(anchor_found);

  // Sign structure: the fine gap rises in p_x and falls in p_y, so moving
  // right can only flip negative to positive and moving up the reverse.
  auto sign_at = [&](double px, double py) {
    for (const RegionCell& c : map.cells)
      if (std::abs(c.p_x - px) < 1e-12 && std::abs(c.p_y - py) < 1e-12)
        return c.fine_gap_sign;
    FAIL("missing cell");
    return 0;
  };
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(0.5 + 0.05 * k);
  for (double py : grid)
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      REQUIRE_FALSE(
          (sign_at(grid[i], py) > 0 && sign_at(grid[i + 1], py) < 0));
  for (double px : grid)
    for (std::size_t j = 0; j + 1 < grid.size(); ++j)
      REQUIRE_FALSE(
          (sign_at(px, grid[j]) < 0 && sign_at(px, grid[j + 1]) > 0));

  // The one-positive-signal region is row-contiguous (qualitative shape).
  for (double py : grid) {
    std::vector<bool> hits;
    for (double px : grid) {
      for (const RegionCell& c : map.cells)
        if (std::abs(c.p_x - px) < 1e-12 && std::abs(c.p_y - py) < 1e-12)
          hits.push_back(c.label == CaseLabel::EitherPositive);
    }
    int transitions = 0;
    for (std::size_t i = 0; i + 1 < hits.size(); ++i)
      if (hits[i] != hits[i + 1]) ++transitions;
    REQUIRE(transitions <= 2);
  }

  const std::string csv = region_map_csv(map);
  const auto lines = split_lines(csv);
  REQUIRE(lines[0] == "kind,p_x,p_y,case,fine_gap_sign");
  REQUIRE(lines.size() == 1 + map.cells.size() + map.coincidence_locus.size());

  REQUIRE_THROWS_AS(region_map(0.0, 0.05), std::invalid_argument);
  REQUIRE_THROWS_AS(region_map(0.7, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(region_map(0.7, 0.6), std::invalid_argument);
}
