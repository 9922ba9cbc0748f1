#pragma once

// Batch front end: plain-text scenario files, parameter sweeps over the
// model primitives with jump/regime annotations, efficiency-region maps
// with a bisection-refined fine-coincidence locus, and deterministic CSV
// emission (12 significant digits, byte-identical across reruns and thread
// counts).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "liability/equilibrium.hpp"
#include "liability/variants.hpp"

namespace liability {

// ---------------------------------------------------------------------------
// Scenario description
// ---------------------------------------------------------------------------

enum class SweepAxis { PrecisionX, PrecisionY, Prior, AlignedShare };

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::PrecisionX: return "p_x";
    case SweepAxis::PrecisionY: return "p_y";
    case SweepAxis::Prior: return "beta";
    case SweepAxis::AlignedShare: return "gamma";
  }
  return "?";
}

inline SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "p_x") return SweepAxis::PrecisionX;
  if (name == "p_y") return SweepAxis::PrecisionY;
  if (name == "beta") return SweepAxis::Prior;
  if (name == "gamma") return SweepAxis::AlignedShare;
  throw std::invalid_argument("unknown sweep axis \"" + name +
                              "\" (expected p_x, p_y, beta, or gamma)");
}

enum class SweepMode { Subjective, Objective, Both };

inline const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Subjective: return "subjective";
    case SweepMode::Objective: return "objective";
    case SweepMode::Both: return "both";
  }
  return "?";
}

inline SweepMode sweep_mode_from_name(const std::string& name) {
  if (name == "subjective") return SweepMode::Subjective;
  if (name == "objective") return SweepMode::Objective;
  if (name == "both") return SweepMode::Both;
  throw std::invalid_argument("unknown mens_rea mode \"" + name +
                              "\" (expected subjective, objective, or both)");
}

enum class ColumnSet { Minimal, Full };

struct Scenario {
  // Base point; the swept coordinate is replaced per grid value.
  double beta = 9.0 / 13.0;
  double p_x = 0.75;
  double p_y = 0.75;
  double gamma = 11.0 / 20.0;
  double gamma_bar = 0.5;

  SweepAxis axis = SweepAxis::PrecisionX;
  double from = 0.55;
  double to = 0.95;
  double step = 1e-3;

  SweepMode mode = SweepMode::Subjective;
  ColumnSet columns = ColumnSet::Full;

  InformationEnvironment environment_at(double v) const {
    switch (axis) {
      case SweepAxis::PrecisionX: return {beta, v, p_y};
      case SweepAxis::PrecisionY: return {beta, p_x, v};
      case SweepAxis::Prior: return {v, p_x, p_y};
      case SweepAxis::AlignedShare: return {beta, p_x, p_y};
    }
    return {beta, p_x, p_y};
  }

  PopulationModel population_at(double v) const {
    return PopulationModel(axis == SweepAxis::AlignedShare ? v : gamma,
                           gamma_bar);
  }

  void validate() const {
    auto in_open = [](double v, double lo, double hi) {
      return v > lo && v < hi;
    };
    if (!in_open(beta, 0.0, 1.0))
      throw std::invalid_argument("scenario: beta must lie in (0,1)");
    if (!in_open(p_x, 0.5, 1.0) || !in_open(p_y, 0.5, 1.0))
      throw std::invalid_argument(
          "scenario: signal precisions must lie in (1/2,1)");
    if (!in_open(gamma, 0.0, 1.0) || !in_open(gamma_bar, 0.0, 1.0))
      throw std::invalid_argument(
          "scenario: population shares must lie in (0,1)");
    if (!(step > 0.0))
      throw std::invalid_argument("scenario: sweep step must be positive");
    if (!(from <= to))
      throw std::invalid_argument("scenario: sweep range must satisfy from <= to");
    const bool precision_axis =
        axis == SweepAxis::PrecisionX || axis == SweepAxis::PrecisionY;
    const double lo = precision_axis ? 0.5 : 0.0;
    if (!(from > lo && to < 1.0))
      throw std::invalid_argument(
          std::string("scenario: sweep range leaves the domain of ") +
          to_string(axis));
  }
};

// ---------------------------------------------------------------------------
// Scenario file parsing (INI-like: [section], key = value, # comments)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Accepts plain decimals and exact fractions like "9/13".
inline double parse_number(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  auto to_double = [&](const std::string& part) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("scenario: bad number \"" + s + "\" for " +
                                  where);
    }
    if (pos != part.size())
      throw std::invalid_argument("scenario: bad number \"" + s + "\" for " +
                                  where);
    return v;
  };
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) return to_double(s);
  const double num = to_double(trim(s.substr(0, slash)));
  const double den = to_double(trim(s.substr(slash + 1)));
  if (den == 0.0)
    throw std::invalid_argument("scenario: zero denominator for " + where);
  return num / den;
}

}  // namespace detail

inline Scenario parse_scenario(std::istream& in) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string line, section;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("scenario: unterminated section header on line " +
                                    std::to_string(line_no));
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "base" && section != "sweep" && section != "mode" &&
          section != "output")
        throw std::invalid_argument("scenario: unknown section [" + section +
                                    "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("scenario: expected key = value on line " +
                                  std::to_string(line_no));
    if (section.empty())
      throw std::invalid_argument(
          "scenario: key before any [section] on line " +
          std::to_string(line_no));
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("scenario: empty key or value on line " +
                                  std::to_string(line_no));
    if (!sections[section].emplace(key, value).second)
      throw std::invalid_argument("scenario: duplicate key \"" + key +
                                  "\" in [" + section + "]");
  }

  auto take = [&](const std::string& sec,
                  const std::string& key) -> std::optional<std::string> {
    auto s = sections.find(sec);
    if (s == sections.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    std::string v = k->second;
    s->second.erase(k);
    return v;
  };
  auto require = [&](const std::string& sec, const std::string& key) {
    auto v = take(sec, key);
    if (!v)
      throw std::invalid_argument("scenario: missing " + key + " in [" + sec +
                                  "]");
    return *v;
  };

  Scenario sc;
  sc.beta = detail::parse_number(require("base", "beta"), "beta");
  sc.p_x = detail::parse_number(require("base", "p_x"), "p_x");
  sc.p_y = detail::parse_number(require("base", "p_y"), "p_y");
  sc.gamma = detail::parse_number(require("base", "gamma"), "gamma");
  const auto gbar = take("base", "gamma_bar");
  const auto loss = take("base", "L");
  if (gbar && loss)
    throw std::invalid_argument(
        "scenario: give gamma_bar or L in [base], not both");
  if (!gbar && !loss)
    throw std::invalid_argument("scenario: [base] needs gamma_bar or L");
  if (gbar) {
    sc.gamma_bar = detail::parse_number(*gbar, "gamma_bar");
  } else {
    const double L = detail::parse_number(*loss, "L");
    if (!(L > 0.0))
      throw std::invalid_argument("scenario: loss ratio L must be positive");
    sc.gamma_bar = 1.0 / (1.0 + L);
  }

  sc.axis = sweep_axis_from_name(require("sweep", "axis"));
  sc.from = detail::parse_number(require("sweep", "from"), "from");
  sc.to = detail::parse_number(require("sweep", "to"), "to");
  sc.step = detail::parse_number(require("sweep", "step"), "step");

  if (auto m = take("mode", "mens_rea")) sc.mode = sweep_mode_from_name(*m);
  if (auto c = take("output", "columns")) {
    if (*c == "minimal")
      sc.columns = ColumnSet::Minimal;
    else if (*c == "full")
      sc.columns = ColumnSet::Full;
    else
      throw std::invalid_argument("scenario: columns must be minimal or full");
  }

  for (const auto& [sec, keys] : sections)
    for (const auto& [key, value] : keys)
      throw std::invalid_argument("scenario: unknown key \"" + key +
                                  "\" in [" + sec + "]");

  sc.validate();
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in);
}

// ---------------------------------------------------------------------------
// Sweep execution
// ---------------------------------------------------------------------------

struct SweepRow {
  double value = 0.0;  // swept coordinate
  std::string case_label;
  double welfare = 0.0;
  double f_bar = 0.0;
  double fine_u_value = 0.0;
  double fine_b_value = 0.0;
  double fine_gap = 0.0;
  std::string regime;
  double mix_opportunist = 0.0;  // bad-pair opportunistic action probability
  double mix_aligned = 0.0;      // positive-pair aligned action probability
  bool supported = true;
  bool has_objective = false;
  double welfare_objective = 0.0;
  std::string objective_regime;
  double eta1_value = 0.0;
  double eta2_value = 0.0;
  bool regime_change = false;  // regime differs from the previous grid point
  bool jump = false;           // welfare discontinuity heuristic fired
  std::string marker;          // per-point diagnostics; empty when clean
};

struct SweepTable {
  Scenario scenario;
  std::vector<SweepRow> rows;
};

inline int thread_count_from_env() {
  const char* s = std::getenv("LIABILITY_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

namespace detail {

inline void append_marker(std::string& marker, const char* text) {
  if (!marker.empty()) marker += ';';
  marker += text;
}

inline SweepRow evaluate_sweep_point(const Scenario& sc, double v) {
  SweepRow row;
  row.value = v;
  const InformationEnvironment env = sc.environment_at(v);
  const PopulationModel pop = sc.population_at(v);

  row.case_label = to_string(classify_case(env));
  row.fine_u_value = fine_u(env);
  row.fine_b_value = fine_b(env);
  row.fine_gap = delta(env);

  const EquilibriumSolution sol = solve_optimal(env, pop);
  row.welfare = sol.welfare;
  row.f_bar = sol.f_bar;
  row.regime = to_string(sol.regime);
  row.mix_opportunist = sol.profile.action(AgentType::Opportunistic, {-1, -1});
  row.mix_aligned = sol.profile.action(AgentType::Aligned, {-1, 1});
  row.supported = sol.supported;
  if (!sol.supported)
    append_marker(row.marker, "population-unsupported");

  if (sc.mode != SweepMode::Subjective) {
    if (classify_case(env) == CaseLabel::EitherPositive) {
      const EquilibriumSolution obj = solve_objective_mensrea(env, pop);
      row.has_objective = true;
      row.welfare_objective = obj.welfare;
      row.objective_regime = to_string(obj.regime);
      row.eta1_value = eta1(env, pop).value;
      row.eta2_value = eta2(env, pop).value;
    } else {
      append_marker(row.marker, "objective-requires-one-positive-case");
    }
  }
  return row;
}

}  // namespace detail

// Evaluates every grid point independently (optionally across
// LIABILITY_THREADS workers writing disjoint slots, so the output order
// never depends on scheduling) and annotates regime changes and
// discontinuities between adjacent points afterwards.
inline SweepTable run_sweep(const Scenario& sc) {
  sc.validate();
  const long long n =
      static_cast<long long>(std::floor((sc.to - sc.from) / sc.step + 1e-9)) +
      1;

  SweepTable table;
  table.scenario = sc;
  table.rows.resize(static_cast<std::size_t>(n));

  const int threads = std::min<long long>(thread_count_from_env(), n);
  auto work = [&](long long first) {
    for (long long i = first; i < n; i += threads)
      table.rows[static_cast<std::size_t>(i)] =
          detail::evaluate_sweep_point(sc, sc.from + static_cast<double>(i) * sc.step);
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  // Annotations: a regime change marks the later row; the jump heuristic
  // flags a first difference an order of magnitude above both flanking
  // first differences (single flank at the boundary).
  std::vector<double> diff(table.rows.size(), 0.0);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    diff[i] = std::abs(table.rows[i].welfare - table.rows[i - 1].welfare);
    table.rows[i].regime_change =
        table.rows[i].regime != table.rows[i - 1].regime;
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    double flank = 0.0;
    if (i >= 2) flank = std::max(flank, diff[i - 1]);
    if (i + 1 < table.rows.size()) flank = std::max(flank, diff[i + 1]);
    table.rows[i].jump = diff[i] > std::max(10.0 * flank, 1e-9);
  }
  return table;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

}  // namespace detail

inline std::string sweep_csv_header(const Scenario& sc) {
  std::string h = std::string(to_string(sc.axis)) + ",welfare,regime,f_bar";
  if (sc.columns == ColumnSet::Full)
    h += ",fine_u,fine_b,delta,case,mix_opportunist,mix_aligned,supported";
  if (sc.mode != SweepMode::Subjective)
    h += ",welfare_objective,objective_regime,eta1,eta2";
  h += ",regime_change,jump,marker";
  return h;
}

inline std::string sweep_csv(const SweepTable& table) {
  const Scenario& sc = table.scenario;
  std::string out = sweep_csv_header(sc) + "\n";
  for (const SweepRow& r : table.rows) {
    out += detail::fmt_g(r.value);
    out += ',' + detail::fmt_g(r.welfare);
    out += ',' + r.regime;
    out += ',' + detail::fmt_g(r.f_bar);
    if (sc.columns == ColumnSet::Full) {
      out += ',' + detail::fmt_g(r.fine_u_value);
      out += ',' + detail::fmt_g(r.fine_b_value);
      out += ',' + detail::fmt_g(r.fine_gap);
      out += ',' + r.case_label;
      out += ',' + detail::fmt_g(r.mix_opportunist);
      out += ',' + detail::fmt_g(r.mix_aligned);
      out += r.supported ? ",1" : ",0";
    }
    if (sc.mode != SweepMode::Subjective) {
      if (r.has_objective) {
        out += ',' + detail::fmt_g(r.welfare_objective);
        out += ',' + r.objective_regime;
        out += ',' + detail::fmt_g(r.eta1_value);
        out += ',' + detail::fmt_g(r.eta2_value);
      } else {
        out += ",,,,";
      }
    }
    out += r.regime_change ? ",1" : ",0";
    out += r.jump ? ",1" : ",0";
    out += ',' + r.marker;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Efficiency-region map
// ---------------------------------------------------------------------------

struct RegionCell {
  double p_x = 0.0, p_y = 0.0;
  CaseLabel label = CaseLabel::EitherPositive;
  int fine_gap_sign = 0;  // -1, 0, +1 with a 1e-12 dead zone
};

struct RegionMap {
  double beta = 0.0;
  double step = 0.0;
  std::vector<RegionCell> cells;  // p_y-major, both coordinates ascending
  // One refined point per grid row whose fine gap changes sign: the root of
  // the gap in p_x at that row's p_y, found by bisection to 1e-12.
  std::vector<std::pair<double, double>> coincidence_locus;
};

inline RegionMap region_map(double beta, double grid_step) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("region_map: beta must lie in (0,1)");
  if (!(grid_step > 0.0 && grid_step < 0.5))
    throw std::invalid_argument("region_map: grid step must lie in (0, 1/2)");

  std::vector<double> grid;
  for (long long k = 1;; ++k) {
    const double p = 0.5 + static_cast<double>(k) * grid_step;
    if (p >= 1.0 - 1e-12) break;
    grid.push_back(p);
  }
  if (grid.empty())
    throw std::invalid_argument("region_map: grid step leaves no interior points");

  RegionMap map;
  map.beta = beta;
  map.step = grid_step;
  map.cells.reserve(grid.size() * grid.size());

  for (double py : grid) {
    auto gap_at = [&](double px) {
      return delta(InformationEnvironment(beta, px, py));
    };
    int prev_sign = 0;
    double prev_px = 0.0;
    bool row_refined = false;
    for (double px : grid) {
      const double d = gap_at(px);
      RegionCell cell;
      cell.p_x = px;
      cell.p_y = py;
      cell.label = classify_case(InformationEnvironment(beta, px, py));
      cell.fine_gap_sign = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
      if (!row_refined) {
        if (cell.fine_gap_sign == 0) {
          map.coincidence_locus.emplace_back(px, py);
          row_refined = true;
        } else if (prev_sign < 0 && cell.fine_gap_sign > 0) {
          map.coincidence_locus.emplace_back(
              detail::bisect(gap_at, prev_px, px), py);
          row_refined = true;
        }
      }
      prev_sign = cell.fine_gap_sign;
      prev_px = px;
      map.cells.push_back(cell);
    }
  }
  return map;
}

inline std::string region_map_csv(const RegionMap& map) {
  std::string out = "kind,p_x,p_y,case,fine_gap_sign\n";
  for (const RegionCell& c : map.cells) {
    out += "cell," + detail::fmt_g(c.p_x) + ',' + detail::fmt_g(c.p_y) + ',' +
           to_string(c.label) + ',' + std::to_string(c.fine_gap_sign) + '\n';
  }
  for (const auto& [px, py] : map.coincidence_locus) {
    out += "locus," + detail::fmt_g(px) + ',' + detail::fmt_g(py) + ",,0\n";
  }
  return out;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out)
    throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace liability
