#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "snhet/experiments/config_io.hpp"
#include "snhet/experiments/presets.hpp"
#include "snhet/experiments/result_table.hpp"
#include "snhet/experiments/sweep.hpp"

using namespace snhet;
using namespace snhet::experiments;

namespace {

SweepSpec tiny_spec() {
  std::istringstream in(R"(
[network]
tier_count = 2
tier[1].density_lambda0 = 10
eve_density = 1e-6

[placement]
mode = fixed
radius = 50

[sweep]
parameter = tier[1].bias
grid = 1, 4
engines = analytic, lower_bound
rel_tol = 1e-5

[scenario.noma]

[scenario.oma]
oma_mode = true
)");
  return load_sweep(in);
}

}  // namespace

TEST(Overrides, TierPathsAndUnits) {
  Scene s{table1_config(3), FixedPlacement{50.0}};
  apply_setting(s, "tier[2].power_dbm", "30");
  EXPECT_NEAR(s.network.tiers[2].power_linear, 1e3, 1e-9);
  apply_setting(s, "tier[1].density_lambda0", "4");
  EXPECT_NEAR(s.network.tiers[1].density, 4 * lambda0, 1e-18);
  apply_setting(s, "tier[2].density_ratio", "2");
  EXPECT_NEAR(s.network.tiers[2].density, 2 * s.network.tiers[0].density, 1e-18);
  apply_setting(s, "noise_dbm", "-100");
  EXPECT_NEAR(s.network.noise_linear, 1e-10, 1e-22);
  apply_setting(s, "a_m", "0.7");
  apply_setting(s, "a_n", "0.3");
  EXPECT_EQ(s.network.split.a_m, 0.7);
  apply_setting(s, "tier[0].noma", "off");
  ASSERT_EQ(s.network.tier_noma_enabled.size(), 3u);
  EXPECT_FALSE(s.network.tier_noma_enabled[0]);
  apply_setting(s, "placement", "random");
  EXPECT_FALSE(is_fixed(s.placement));
  apply_setting(s, "first_user_radius", "80");
  ASSERT_TRUE(is_fixed(s.placement));
  EXPECT_EQ(std::get<FixedPlacement>(s.placement).radius, 80.0);
  apply_setting(s, "tier_count", "1");
  EXPECT_EQ(s.network.tier_count(), 1u);
}

TEST(Overrides, Errors) {
  Scene s{table1_config(2), FixedPlacement{50.0}};
  EXPECT_THROW(apply_setting(s, "tier[5].alpha", "3"), SpecError);
  EXPECT_THROW(apply_setting(s, "tier[0].colour", "3"), SpecError);
  EXPECT_THROW(apply_setting(s, "gain", "3"), SpecError);
  EXPECT_THROW(apply_setting(s, "eve_density", "lots"), SpecError);
  EXPECT_THROW(apply_setting(s, "tier[0].noma", "maybe"), SpecError);
  EXPECT_THROW(apply_setting(s, "tier_count", "1.5"), SpecError);
  EXPECT_THROW(apply_setting(s, "placement", "scattered"), SpecError);
  EXPECT_TRUE(is_numeric_path("tier[3].bias"));
  EXPECT_FALSE(is_numeric_path("placement"));
}

TEST(Grid, Forms) {
  EXPECT_EQ(parse_grid("1, 2 3"), (std::vector<double>{1, 2, 3}));
  const auto l = parse_grid("linspace(1, 20, 20)");
  ASSERT_EQ(l.size(), 20u);
  EXPECT_EQ(l.front(), 1.0);
  EXPECT_EQ(l.back(), 20.0);
  const auto g = parse_grid("logspace(-8, -4, 9)");
  ASSERT_EQ(g.size(), 9u);
  EXPECT_NEAR(g[0], 1e-8, 1e-22);
  EXPECT_NEAR(g[8], 1e-4, 1e-18);
  EXPECT_TRUE(parse_grid("").empty());
  EXPECT_THROW(parse_grid("linspace(1, 2)"), SpecError);
  EXPECT_THROW(parse_grid("1, x"), SpecError);
}

TEST(Spec, ValidationCollectsProblems) {
  auto s = tiny_spec();
  EXPECT_NO_THROW(validate_spec(s));
  s.grid = {3.0, 1.0};
  EXPECT_THROW(validate_spec(s), SpecError);
  s.grid.clear();
  EXPECT_THROW(validate_spec(s), SpecError);
  s = tiny_spec();
  s.parameter = "placement";
  EXPECT_THROW(validate_spec(s), SpecError);
  s = tiny_spec();
  s.engines.clear();
  EXPECT_THROW(validate_spec(s), SpecError);
  s = tiny_spec();
  s.scenarios[1].settings.push_back({"nonsense", "1"});
  try {
    validate_spec(s);
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("nonsense"), std::string::npos);
  }
}

TEST(Spec, FileErrors) {
  std::istringstream no_sweep("[network]\ntier_count = 1\n");
  EXPECT_THROW(load_sweep(no_sweep), SpecError);
  std::istringstream bad_section("[sweep]\nparameter = eve_density\ngrid = 1e-6\nengines = analytic\n[extra]\n");
  EXPECT_THROW(load_sweep(bad_section), SpecError);
  std::istringstream bad_key("[sweep]\nparameter = eve_density\nspeed = 3\n");
  EXPECT_THROW(load_sweep(bad_key), SpecError);
  std::istringstream bad_engine("[sweep]\nengines = guess\n");
  EXPECT_THROW(load_sweep(bad_engine), SpecError);
}

TEST(Ini, SectionsAndErrors) {
  std::istringstream in("; comment\n[a]\nx = 1\n# more\n\n[empty]\n[b]\n y=two words \n");
  const auto s = read_sections(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1].name, "empty");
  EXPECT_TRUE(s[1].entries.empty());
  EXPECT_EQ(s[2].entries[0], (Setting{"y", "two words"}));
  for (const char* bad : {"x = 1\n", "[a\n", "[a]\nnovalue\n", "[a]\nx=1\nx=2\n", "[a]\n[a]\n", "[]\n"}) {
    std::istringstream b(bad);
    EXPECT_THROW(read_sections(b), SpecError) << bad;
  }
}

TEST(Csv, RoundTripWithQuoting) {
  ResultTable t;
  t.header = {"a", "b", "c"};
  t.rows = {{"1", "x,y", "say \"hi\""}, {"", "line\nbreak", "nan"}};
  const auto text = to_csv(t);
  EXPECT_EQ(parse_csv(text), t);
  EXPECT_TRUE(std::isnan(t.number(1, "a")));
  EXPECT_EQ(t.cell(0, "b"), "x,y");
  EXPECT_THROW(parse_csv("a,b\n1\n"), SpecError);
  EXPECT_THROW(parse_csv("a\n\"open\n"), SpecError);
  const auto d = drop_columns(t, {"b"});
  EXPECT_EQ(d.header, (std::vector<std::string>{"a", "c"}));
}

TEST(Sweep, RowsAndReproducibility) {
  const auto spec = tiny_spec();
  const auto t1 = run_sweep(spec);
  ASSERT_EQ(t1.rows.size(), 2u * 2u * 2u);
  EXPECT_EQ(failed_rows(t1), 0u);
  EXPECT_EQ(t1.cell(0, "series"), "noma");
  EXPECT_EQ(t1.cell(0, "engine"), "analytic");
  EXPECT_EQ(t1.cell(7, "series"), "oma");
  EXPECT_EQ(t1.number(7, "value"), 4.0);
  EXPECT_EQ(t1.cell(0, "placement"), "fixed");
  // OMA leaves the far user silent.
  EXPECT_EQ(t1.number(4, "net_r_m_case1"), 0.0);
  const double sec = t1.number(0, "secrecy_total");
  EXPECT_NEAR(t1.number(0, "t0_secrecy") * t1.number(0, "t0_association") +
                  t1.number(0, "t1_secrecy") * t1.number(0, "t1_association"),
              sec, 1e-8 * sec);

  const auto t2 = run_sweep(spec);
  EXPECT_EQ(to_csv(drop_columns(t1, {"wall_time_s"})), to_csv(drop_columns(t2, {"wall_time_s"})));
}

TEST(Sweep, PointFailureIsRecordedAndRunContinues) {
  auto spec = tiny_spec();
  spec.engines = {EngineKind::InterferenceLimited, EngineKind::Analytic};
  spec.scenarios.resize(1);
  const auto t = run_sweep(spec);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(failed_rows(t), 2u);
  EXPECT_EQ(t.cell(0, "status"), "error");
  EXPECT_FALSE(t.cell(0, "error").empty());
  EXPECT_TRUE(std::isnan(t.number(0, "secrecy_total")));
  EXPECT_EQ(t.cell(1, "status"), "ok");
}

TEST(Sweep, MonteCarloRowsCarryErrors) {
  auto spec = tiny_spec();
  spec.engines = {EngineKind::MonteCarlo};
  spec.scenarios.resize(1);
  spec.grid = {1.0};
  spec.run.iterations = 200;
  spec.run.seed = 5;
  const auto t = run_sweep(spec);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.cell(0, "status"), "ok");
  EXPECT_GT(t.number(0, "secrecy_total_se"), 0.0);
  EXPECT_EQ(t.number(0, "iterations"), 200.0);
  EXPECT_EQ(t.number(0, "seed"), 5.0);
}

TEST(Presets, FigureParameters) {
  for (auto n : preset_names) EXPECT_NO_THROW(validate_spec(figure_preset(n))) << n;
  EXPECT_THROW(figure_preset("fig99"), UnknownPreset);

  const auto f3 = figure_preset("fig3");
  EXPECT_EQ(f3.parameter, "eve_density");
  EXPECT_EQ(f3.grid.size(), 9u);
  EXPECT_EQ(f3.scenarios.size(), 3u);
  EXPECT_EQ(std::get<FixedPlacement>(f3.base.placement).radius, 50.0);
  const auto jobs = expand_jobs(f3);
  // K2 scenario: lambda_2 = 10 lambda_0.
  const auto& k2 = jobs[f3.grid.size() * 2].scene.network;
  ASSERT_EQ(k2.tier_count(), 2u);
  EXPECT_NEAR(k2.tiers[1].density / lambda0, 10.0, 1e-12);

  const auto f5 = figure_preset("fig5");
  EXPECT_EQ(std::get<FixedPlacement>(f5.base.placement).radius, 10.0);
  EXPECT_NEAR(f5.base.network.tiers[1].density / lambda0, 15.0, 1e-12);
  EXPECT_EQ(f5.parameter, "tier[1].bias");

  const auto f4 = figure_preset("fig4");
  EXPECT_FALSE(is_fixed(f4.base.placement));
  EXPECT_EQ(f4.grid.back(), 20.0);

  const auto f7c = figure_preset("fig7c");
  EXPECT_EQ(f7c.scenarios.size(), 3u);
}

TEST(Configs, SampleFilesLoad) {
  std::size_t seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(SNHET_CONFIG_DIR)) {
    if (e.path().extension() != ".ini") continue;
    ++seen;
    const auto sections = read_sections_file(e.path().string());
    bool sweep = false;
    for (const auto& s : sections) sweep = sweep || s.name == "sweep";
    if (sweep) {
      EXPECT_NO_THROW(validate_spec(load_sweep_file(e.path().string()))) << e.path();
    } else {
      const auto scene = load_scene_file(e.path().string());
      EXPECT_TRUE(validate(scene.network).empty()) << e.path();
    }
  }
  EXPECT_GE(seen, 2u);
}
