// snhet: run secrecy-rate sweeps and single-point evaluations, writing CSV.
//
//   snhet sweep spec.ini [--out results.csv]
//   snhet preset fig3 [--out fig3.csv]
//   snhet validate spec.ini
//   snhet point config.ini [--engine analytic --engine montecarlo]
//
// Exit status: 0 all points ok, 1 some point failed, 2 bad input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "snhet.hpp"

namespace ex = snhet::experiments;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iters;
  std::optional<double> tol;
  std::optional<unsigned> threads;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--seed", seed, "Monte Carlo master seed");
    app->add_option("--iters", iters, "Monte Carlo iterations per tier")->check(CLI::PositiveNumber);
    app->add_option("--tol", tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
  }
  void apply(ex::RunOptions& run) const {
    if (seed) run.seed = *seed;
    if (iters) run.iterations = *iters;
    if (tol) run.quadrature.rel_tol = *tol;
    if (threads) run.threads = *threads;
  }
};

int emit(const ex::ResultTable& table, const std::string& path) {
  if (path.empty() || path == "-") {
    ex::write_csv(std::cout, table);
  } else {
    ex::write_csv_file(path, table);
    std::fprintf(stderr, "wrote %zu rows to %s\n", table.rows.size(), path.c_str());
  }
  const auto failed = ex::failed_rows(table);
  if (failed) std::fprintf(stderr, "%zu point(s) failed; see the error column\n", failed);
  return failed ? 1 : 0;
}

int run_spec(ex::SweepSpec spec, const Overrides& o) {
  o.apply(spec.run);
  return emit(ex::run_sweep(spec), o.out.empty() ? spec.output : o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ergodic secrecy rate of NOMA heterogeneous networks"};
  app.require_subcommand(1);

  Overrides sweep_o, preset_o, point_o;
  std::string spec_path, preset_name, validate_path, point_path;
  std::vector<std::string> engines;

  auto* sweep = app.add_subcommand("sweep", "run the sweep described by a spec file");
  sweep->add_option("spec", spec_path, "spec file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_o.out, "CSV path ('-' for stdout); default from the spec");
  sweep_o.add_to(sweep);

  auto* preset = app.add_subcommand("preset", "run a built-in figure sweep");
  preset->add_option("name", preset_name, "fig3 fig4 fig5 fig6 fig7a fig7b fig7c")->required();
  preset->add_option("--out", preset_o.out, "CSV path ('-' for stdout); default <name>.csv");
  preset_o.add_to(preset);

  auto* validate = app.add_subcommand("validate", "check a spec file without running it");
  validate->add_option("spec", validate_path, "spec file")->required()->check(CLI::ExistingFile);

  auto* point = app.add_subcommand("point", "evaluate one network config");
  point->add_option("config", point_path, "config file with [network] and [placement]")
      ->required()
      ->check(CLI::ExistingFile);
  point->add_option("--engine", engines, "analytic, lower_bound, montecarlo, interference_limited")
      ->default_val(std::vector<std::string>{"analytic"});
  point->add_option("--out", point_o.out, "CSV path (default stdout)");
  point_o.add_to(point);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_spec(ex::load_sweep_file(spec_path), sweep_o);
    if (*preset) return run_spec(ex::figure_preset(preset_name), preset_o);
    if (*validate) {
      const auto spec = ex::load_sweep_file(validate_path);
      ex::validate_spec(spec);
      const auto jobs = ex::expand_jobs(spec);
      std::size_t bad = 0;
      for (const auto& j : jobs) {
        if (!j.setup_error.empty()) {
          std::fprintf(stderr, "%s @ %s: %s\n", j.label.series.c_str(),
                       j.label.value ? ex::format_number(*j.label.value).c_str() : "-", j.setup_error.c_str());
          ++bad;
          continue;
        }
        for (const auto& issue : snhet::validate(j.scene.network)) {
          std::fprintf(stderr, "%s @ %s: %s\n", j.label.series.c_str(),
                       j.label.value ? ex::format_number(*j.label.value).c_str() : "-", issue.message.c_str());
          ++bad;
        }
      }
      std::printf("%s: %zu points, %zu problem(s)\n", validate_path.c_str(), jobs.size(), bad);
      return bad ? 2 : 0;
    }
    if (*point) {
      const auto scene = ex::load_scene_file(point_path);
      ex::RunOptions run;
      point_o.apply(run);
      ex::ResultTable table;
      table.header = ex::result_columns(scene.network.tier_count());
      for (const auto& e : engines) {
        const auto kind = ex::parse_engine(e);
        const auto r = ex::evaluate_point(scene, kind, run);
        table.rows.push_back(ex::make_row({"point", "", std::nullopt, kind}, scene, r, scene.network.tier_count(), run));
      }
      return emit(table, point_o.out);
    }
  } catch (const ex::SpecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ex::UnknownPreset& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
