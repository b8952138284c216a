#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "snhet/experiments/sweep.hpp"

namespace snhet::experiments {

class UnknownPreset : public std::invalid_argument {
 public:
  explicit UnknownPreset(const std::string& name)
      : std::invalid_argument("unknown preset '" + name + "' (expected fig3, fig4, fig5, fig6, fig7a, fig7b, fig7c)") {}
};

inline constexpr std::array<std::string_view, 7> preset_names = {"fig3", "fig4", "fig5", "fig6",
                                                                 "fig7a", "fig7b", "fig7c"};

namespace detail {

// Default network with tier 0 at lambda0 and a 10^4 m simulation disc.
inline SweepSpec table1_spec(std::string name, std::size_t tiers) {
  SweepSpec s;
  s.name = std::move(name);
  s.base.network = table1_config(tiers);
  s.base.network.eve_density = 1e-7;
  s.base.placement = FixedPlacement{50.0};
  s.run.window.radius = 1e4;
  s.output = s.name + ".csv";
  return s;
}

inline std::vector<double> eve_grid() { return parse_grid("logspace(-8, -4, 9)"); }

// Total density 11 lambda0 split as {11}, {1, 10}, {1, 4, 6}.
inline Scenario k1_scenario() { return {"K1", {{"tier_count", "1"}, {"tier[0].density_lambda0", "11"}}, {}, true}; }
inline Scenario k2_scenario() { return {"K2", {{"tier_count", "2"}, {"tier[1].density_lambda0", "10"}}, {}, true}; }
inline Scenario k3_scenario() {
  return {"K3", {{"tier_count", "3"}, {"tier[1].density_lambda0", "4"}, {"tier[2].density_lambda0", "6"}}, {}, true};
}

}  // namespace detail

inline SweepSpec figure_preset(std::string_view name) {
  using detail::table1_spec;
  const std::string n(name);
  if (n == "fig3") {
    auto s = table1_spec(n, 3);
    s.parameter = "eve_density";
    s.grid = detail::eve_grid();
    s.engines = {EngineKind::Analytic, EngineKind::MonteCarlo};
    s.scenarios = {detail::k1_scenario(), detail::k2_scenario(), detail::k3_scenario()};
    s.run.iterations = 1000000;
    return s;
  }
  if (n == "fig4") {
    auto s = table1_spec(n, 2);
    s.base.placement = RandomPlacement{};
    s.parameter = "tier[1].density_ratio";
    s.grid = parse_grid("linspace(1, 20, 20)");
    s.engines = {EngineKind::Analytic, EngineKind::LowerBound};
    s.scenarios = {{"noma", {}, {}, true}, {"oma", {{"oma_mode", "true"}}, {}, true}};
    return s;
  }
  if (n == "fig5") {
    auto s = table1_spec(n, 2);
    s.base.placement = FixedPlacement{10.0};
    apply_setting(s.base, "tier[1].density_lambda0", "15");
    s.parameter = "tier[1].bias";
    s.grid = parse_grid("linspace(1, 10, 10)");
    s.engines = {EngineKind::Analytic};
    return s;
  }
  if (n == "fig6") {
    auto s = table1_spec(n, 2);
    apply_setting(s.base, "tier[1].density_lambda0", "10");
    s.parameter = "first_user_radius";
    s.grid = parse_grid("linspace(10, 200, 20)");
    s.engines = {EngineKind::Analytic, EngineKind::LowerBound};
    s.scenarios = {{"fixed", {}, {}, true}, {"random", {{"placement", "random"}}, {}, false}};
    return s;
  }
  if (n == "fig7a") {
    auto s = table1_spec(n, 2);
    apply_setting(s.base, "tier[1].density_lambda0", "10");
    s.parameter = "eve_density";
    s.grid = detail::eve_grid();
    s.engines = {EngineKind::Analytic};
    s.scenarios = {{"sn_het", {}, {}, true}, {"hetnet_secrecy", {{"oma_mode", "true"}}, {}, true}};
    return s;
  }
  if (n == "fig7b") {
    auto s = table1_spec(n, 3);
    s.parameter = "eve_density";
    s.grid = detail::eve_grid();
    s.engines = {EngineKind::Analytic};
    s.scenarios = {detail::k1_scenario(), detail::k2_scenario(), detail::k3_scenario()};
    return s;
  }
  if (n == "fig7c") {
    auto s = table1_spec(n, 2);
    apply_setting(s.base, "tier[1].density_lambda0", "15");
    s.parameter = "eve_density";
    s.grid = detail::eve_grid();
    s.engines = {EngineKind::Analytic};
    s.scenarios = {{"sn_het", {}, {}, true},
                   {"noma_hetnet_secrecy", {{"tier[0].noma", "false"}}, {}, true},
                   {"hetnet_secrecy", {{"oma_mode", "true"}}, {}, true}};
    return s;
  }
  throw UnknownPreset(n);
}

}  // namespace snhet::experiments
