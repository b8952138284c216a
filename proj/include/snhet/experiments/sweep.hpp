#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "snhet/analytic/secrecy.hpp"
#include "snhet/core_model.hpp"
#include "snhet/experiments/config_io.hpp"
#include "snhet/experiments/result_table.hpp"
#include "snhet/montecarlo.hpp"

namespace snhet::experiments {

enum class EngineKind { Analytic, LowerBound, MonteCarlo, InterferenceLimited };

inline std::string_view to_string(EngineKind e) {
  switch (e) {
    case EngineKind::Analytic: return "analytic";
    case EngineKind::LowerBound: return "lower_bound";
    case EngineKind::MonteCarlo: return "montecarlo";
    case EngineKind::InterferenceLimited: return "interference_limited";
  }
  return "unknown";
}

inline EngineKind parse_engine(std::string_view name) {
  for (auto e : {EngineKind::Analytic, EngineKind::LowerBound, EngineKind::MonteCarlo, EngineKind::InterferenceLimited})
    if (to_string(e) == name) return e;
  throw SpecError("unknown engine '" + std::string(name) +
                  "' (expected analytic, lower_bound, montecarlo, interference_limited)");
}

inline std::vector<EngineKind> parse_engines(std::string_view text) {
  std::vector<EngineKind> out;
  for (const auto& item : detail::split_list(text)) out.push_back(parse_engine(item));
  return out;
}

/// Numerical knobs shared by every point of a run.
struct RunOptions {
  quad::QuadratureSettings quadrature;
  std::size_t iterations = 100000;  // Monte Carlo, per tier
  std::uint64_t seed = 1;
  mc::SimWindow window;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// A named variant of the base scene. Unswept scenarios yield one row per engine with an empty value.
struct Scenario {
  std::string name;
  std::vector<Setting> settings;
  std::vector<EngineKind> engines;  // empty: the spec's engines
  bool swept = true;
};

struct SweepSpec {
  std::string name;
  Scene base;
  std::string parameter;
  std::vector<double> grid;
  std::vector<EngineKind> engines;
  std::vector<Scenario> scenarios;  // empty: the base alone, as series "base"
  RunOptions run;
  std::string output;
};

inline std::vector<std::string> spec_problems(const SweepSpec& spec) {
  std::vector<std::string> out;
  if (spec.parameter.empty()) out.push_back("sweep parameter is not set");
  else if (!is_numeric_path(spec.parameter)) out.push_back("sweep parameter '" + spec.parameter + "' is not a numeric setting");
  if (spec.grid.empty()) out.push_back("grid is empty");
  for (double v : spec.grid)
    if (!std::isfinite(v)) out.push_back("grid contains a non-finite value");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      out.push_back("grid is not strictly increasing");
      break;
    }
  if (spec.engines.empty()) out.push_back("no engines selected");
  if (spec.run.iterations < 1) out.push_back("iterations must be >= 1");
  if (!(spec.run.window.radius > 0.0)) out.push_back("simulation window radius must be > 0");
  try {
    spec.run.quadrature.check();
  } catch (const std::exception& e) {
    out.push_back(e.what());
  }
  for (const auto& sc : spec.scenarios) {
    Scene s = spec.base;
    try {
      apply_settings(s, sc.settings);
      if (sc.swept && !spec.grid.empty() && is_numeric_path(spec.parameter))
        apply_numeric(s, spec.parameter, spec.grid.front());
    } catch (const std::exception& e) {
      out.push_back("scenario '" + sc.name + "': " + e.what());
    }
  }
  return out;
}

inline void validate_spec(const SweepSpec& spec) {
  const auto p = spec_problems(spec);
  if (p.empty()) return;
  std::string msg = "invalid sweep spec:";
  for (const auto& s : p) msg += "\n  - " + s;
  throw SpecError(msg);
}

// --- single point -------------------------------------------------------------

struct PointResult {
  RateBreakdown rates;
  std::optional<mc::MonteCarloResult> simulation;
  double wall_time_s = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

inline PointResult evaluate_point(const Scene& scene, EngineKind engine, const RunOptions& run) {
  PointResult out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (engine == EngineKind::MonteCarlo) {
      mc::MonteCarloOptions o;
      o.iterations = run.iterations;
      o.seed = run.seed;
      o.window = run.window;
      o.threads = run.threads;
      out.simulation = mc::estimate_rates(scene.network, scene.placement, o);
      out.rates = out.simulation->breakdown();
    } else {
      analytic::EngineOptions o;
      o.quadrature = run.quadrature;
      o.engine = engine == EngineKind::Analytic     ? analytic::Engine::Exact
                 : engine == EngineKind::LowerBound ? analytic::Engine::LowerBound
                                                    : analytic::Engine::InterferenceLimited;
      out.rates = analytic::ergodic_secrecy_rate(scene.network, scene.placement, o);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// --- table layout --------------------------------------------------------------

inline constexpr std::string_view component_names[] = {"r_m_case1", "r_n_case1", "r_n_case2",
                                                       "r_m_case2", "leak_m",    "leak_n"};

inline std::vector<std::string> result_columns(std::size_t max_tiers) {
  std::vector<std::string> h = {"series", "parameter", "value", "engine", "status", "error", "tiers",
                                "placement", "first_user_radius", "secrecy_total", "secrecy_total_se"};
  for (auto c : component_names) {
    h.push_back("net_" + std::string(c));
    h.push_back("net_" + std::string(c) + "_se");
  }
  for (std::size_t k = 0; k < max_tiers; ++k) {
    const std::string p = "t" + std::to_string(k) + "_";
    for (std::string_view c : {"association", "r_m_case1", "r_n_case1", "r_n_case2", "r_m_case2", "leak_m", "leak_n",
                               "secrecy"}) {
      h.push_back(p + std::string(c));
      h.push_back(p + std::string(c) + "_se");
    }
  }
  for (std::string_view c : {"converged", "quad_error", "iterations", "seed", "degenerate", "wall_time_s"})
    h.emplace_back(c);
  return h;
}

namespace detail {

inline std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

inline void put_components(std::vector<std::string>& row, const TierRates& t, const mc::TierEstimates* se,
                           bool with_assoc, bool with_secrecy) {
  auto put = [&](double v, const mc::Estimate* e) {
    row.push_back(format_number(v));
    row.push_back(e ? format_number(e->std_error) : std::string());
  };
  if (with_assoc) put(t.association, se ? &se->association : nullptr);
  put(t.r_m_case1, se ? &se->r_m_case1 : nullptr);
  put(t.r_n_case1, se ? &se->r_n_case1 : nullptr);
  put(t.r_n_case2, se ? &se->r_n_case2 : nullptr);
  put(t.r_m_case2, se ? &se->r_m_case2 : nullptr);
  put(t.leak_m, se ? &se->leak_m : nullptr);
  put(t.leak_n, se ? &se->leak_n : nullptr);
  if (with_secrecy) put(t.secrecy(), se ? &se->secrecy : nullptr);
}

}  // namespace detail

struct RowLabel {
  std::string series;
  std::string parameter;
  std::optional<double> value;
  EngineKind engine = EngineKind::Analytic;
};

inline std::vector<std::string> make_row(const RowLabel& label, const Scene& scene, const PointResult& r,
                                         std::size_t max_tiers, const RunOptions& run) {
  std::vector<std::string> row = {label.series, label.parameter, label.value ? format_number(*label.value) : "",
                                  std::string(to_string(label.engine)), r.ok() ? "ok" : "error",
                                  detail::one_line(r.error), std::to_string(scene.network.tier_count())};
  const auto* fixed = std::get_if<FixedPlacement>(&scene.placement);
  row.push_back(fixed ? "fixed" : "random");
  row.push_back(fixed ? format_number(fixed->radius) : "");

  const std::size_t width = result_columns(max_tiers).size();
  const auto* sim = r.simulation ? &*r.simulation : nullptr;
  if (!r.ok()) {
    row.resize(width);
    return row;
  }
  row.push_back(format_number(r.rates.secrecy_total));
  row.push_back(sim ? format_number(sim->secrecy_total.std_error) : "");
  detail::put_components(row, r.rates.network_components(), sim ? &sim->network : nullptr, false, false);
  for (std::size_t k = 0; k < max_tiers; ++k) {
    if (k < r.rates.tiers.size()) {
      detail::put_components(row, r.rates.tiers[k], sim ? &sim->tiers[k] : nullptr, true, true);
    } else {
      row.resize(row.size() + 16);
    }
  }
  row.push_back(sim ? "" : (r.rates.converged ? "1" : "0"));
  row.push_back(sim ? "" : format_number(r.rates.error_estimate));
  row.push_back(sim ? std::to_string(run.iterations) : "");
  row.push_back(sim ? std::to_string(run.seed) : "");
  row.push_back(sim ? std::to_string(sim->degenerate) : "");
  row.push_back(format_number(r.wall_time_s));
  return row;
}

// --- sweep ---------------------------------------------------------------------

/// Every point of the sweep in output order.
struct SweepJob {
  RowLabel label;
  Scene scene;
  std::string setup_error;
};

inline std::vector<SweepJob> expand_jobs(const SweepSpec& spec) {
  std::vector<Scenario> scenarios = spec.scenarios;
  if (scenarios.empty()) scenarios.push_back({"base", {}, {}, true});
  std::vector<SweepJob> jobs;
  for (const auto& sc : scenarios) {
    const auto& engines = sc.engines.empty() ? spec.engines : sc.engines;
    std::vector<std::optional<double>> values;
    if (sc.swept)
      for (double v : spec.grid) values.emplace_back(v);
    else
      values.emplace_back(std::nullopt);
    for (const auto& v : values)
      for (auto e : engines) {
        SweepJob j{{sc.name, spec.parameter, v, e}, spec.base, {}};
        try {
          apply_settings(j.scene, sc.settings);
          if (v) apply_numeric(j.scene, spec.parameter, *v);
        } catch (const std::exception& ex) {
          j.setup_error = ex.what();
        }
        jobs.push_back(std::move(j));
      }
  }
  return jobs;
}

/// Runs every point; failures land in the row's error column and the run continues.
inline ResultTable run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  const auto jobs = expand_jobs(spec);
  std::vector<PointResult> results(jobs.size());
  const unsigned workers = mc::detail::worker_count(spec.run.threads);

  auto run_one = [&](std::size_t i, unsigned mc_threads) {
    if (!jobs[i].setup_error.empty()) {
      results[i].error = jobs[i].setup_error;
      return;
    }
    RunOptions run = spec.run;
    run.threads = mc_threads;
    results[i] = evaluate_point(jobs[i].scene, jobs[i].label.engine, run);
  };

  // Quadrature points go to the worker pool; simulations run one at a time with all workers inside.
  std::vector<std::size_t> analytic_jobs;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (jobs[i].label.engine != EngineKind::MonteCarlo) analytic_jobs.push_back(i);
  mc::detail::for_blocks(analytic_jobs.size(), workers, [&](std::size_t b) { run_one(analytic_jobs[b], 1); });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (jobs[i].label.engine == EngineKind::MonteCarlo) run_one(i, workers);

  std::size_t max_tiers = 0;
  for (const auto& j : jobs) max_tiers = std::max(max_tiers, j.scene.network.tier_count());
  ResultTable table;
  table.header = result_columns(max_tiers);
  for (std::size_t i = 0; i < jobs.size(); ++i)
    table.rows.push_back(make_row(jobs[i].label, jobs[i].scene, results[i], max_tiers, spec.run));
  return table;
}

inline std::size_t failed_rows(const ResultTable& t) {
  const auto c = t.column("status");
  std::size_t n = 0;
  for (const auto& r : t.rows) n += r[c] != "ok";
  return n;
}

// --- spec files ------------------------------------------------------------------

/// Reads a sweep spec: [network], [placement], [sweep] and any number of [scenario.NAME] sections.
inline SweepSpec sweep_from_sections(const std::vector<Section>& sections, std::string name = "sweep") {
  SweepSpec spec;
  spec.name = std::move(name);
  spec.base = scene_from_sections(sections);
  bool have_sweep = false;
  for (const auto& sec : sections) {
    if (sec.name == "network" || sec.name == "placement") continue;
    if (sec.name == "sweep") {
      have_sweep = true;
      for (const auto& [k, v] : sec.entries) {
        if (k == "parameter") spec.parameter = detail::trim(v);
        else if (k == "grid") spec.grid = parse_grid(v);
        else if (k == "engines") spec.engines = parse_engines(v);
        else if (k == "output") spec.output = detail::trim(v);
        else if (k == "name") spec.name = detail::trim(v);
        else if (k == "seed") spec.run.seed = detail::parse_unsigned(k, v);
        else if (k == "iterations") spec.run.iterations = detail::parse_unsigned(k, v);
        else if (k == "threads") spec.run.threads = static_cast<unsigned>(detail::parse_unsigned(k, v));
        else if (k == "window") spec.run.window.radius = detail::parse_number(k, v);
        else if (k == "rel_tol") spec.run.quadrature.rel_tol = detail::parse_number(k, v);
        else if (k == "abs_tol") spec.run.quadrature.abs_tol = detail::parse_number(k, v);
        else if (k == "max_subdivisions") spec.run.quadrature.max_subdivisions = detail::parse_unsigned(k, v);
        else throw SpecError("[sweep]: unknown key '" + k + "'");
      }
    } else if (sec.name.rfind("scenario.", 0) == 0) {
      Scenario sc;
      sc.name = sec.name.substr(9);
      if (sc.name.empty()) throw SpecError("scenario section needs a name: [scenario.NAME]");
      for (const auto& [k, v] : sec.entries) {
        if (k == "engines") sc.engines = parse_engines(v);
        else if (k == "sweep") sc.swept = detail::parse_bool(k, v);
        else sc.settings.emplace_back(k, v);
      }
      spec.scenarios.push_back(std::move(sc));
    } else {
      throw SpecError("unknown section [" + sec.name + "]");
    }
  }
  if (!have_sweep) throw SpecError("missing [sweep] section");
  return spec;
}

inline SweepSpec load_sweep(std::istream& in) { return sweep_from_sections(read_sections(in)); }

inline SweepSpec load_sweep_file(const std::string& path) { return sweep_from_sections(read_sections_file(path)); }

}  // namespace snhet::experiments
