#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace snhet {

inline constexpr double pi = std::numbers::pi;

// Reference BS density of the figure presets: one BS per disc of radius 500 m.
inline constexpr double lambda0 = 1.0 / (pi * 500.0 * 500.0);

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double dbm_to_linear(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double linear_to_dbm(double milliwatts) { return 10.0 * std::log10(milliwatts); }

/// One tier of the network. Power in mW, density in BS/m^2.
struct TierParams {
  double power_linear = 1.0;
  double density = lambda0;
  double alpha = 4.0;
  double bias = 1.0;
};

/// Power-domain split between the far user (m) and the near user (n).
struct NomaPowerSplit {
  double a_m = 0.6;
  double a_n = 0.4;

  /// Single-user transmission: the whole power goes to the remaining user.
  static constexpr NomaPowerSplit oma() { return {0.0, 1.0}; }
  bool is_oma() const { return a_m == 0.0 && a_n == 1.0; }
};

struct NetworkConfig {
  std::vector<TierParams> tiers;
  double noise_linear = 0.0;  // sigma^2 in mW
  NomaPowerSplit split;
  double eve_density = 0.0;  // eavesdroppers per m^2
  // Empty means NOMA is on in every tier; otherwise one flag per tier.
  std::vector<bool> tier_noma_enabled;
  bool oma_mode = false;

  std::size_t tier_count() const { return tiers.size(); }
};

struct FixedPlacement {
  double radius = 50.0;
};
struct RandomPlacement {};

/// Distance of the first associated user to its BS: fixed, or drawn from the serving law.
using FirstUserPlacement = std::variant<RandomPlacement, FixedPlacement>;

inline bool is_fixed(const FirstUserPlacement& p) { return std::holds_alternative<FixedPlacement>(p); }

enum class CaseLabel { CaseI, CaseII };  // I: second user nearer (r_s <= r_a); II: farther
enum class UserRole { Far, Near };       // m is always far, n always near

inline bool noma_active(const NetworkConfig& cfg, std::size_t tier) {
  if (cfg.oma_mode) return false;
  return cfg.tier_noma_enabled.empty() || cfg.tier_noma_enabled.at(tier);
}

/// Power split actually used in `tier`: the configured split, or {0, 1} where NOMA is off.
inline NomaPowerSplit effective_split(const NetworkConfig& cfg, std::size_t tier) {
  return noma_active(cfg, tier) ? cfg.split : NomaPowerSplit::oma();
}

/// The six ergodic rate components of one tier, in bits/s/Hz.
struct TierRates {
  double r_m_case1 = 0.0;
  double r_n_case1 = 0.0;
  double r_n_case2 = 0.0;
  double r_m_case2 = 0.0;
  double leak_m = 0.0;
  double leak_n = 0.0;
  double association = 0.0;

  /// [R_n^I - R_e^n]^+ + [R_m^I - R_e^m]^+ + [R_n^II - R_e^n]^+ + [R_m^II - R_e^m]^+
  double secrecy() const {
    auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
    return pos(r_n_case1 - leak_n) + pos(r_m_case1 - leak_m) + pos(r_n_case2 - leak_n) +
           pos(r_m_case2 - leak_m);
  }
};

struct RateBreakdown {
  std::vector<TierRates> tiers;
  double secrecy_total = 0.0;
  bool converged = true;      // every quadrature met its tolerance
  double error_estimate = 0;  // largest reported quadrature error among components

  /// Association-weighted sum of each component over tiers, with association set to 1.
  TierRates network_components() const {
    TierRates n;
    for (const auto& t : tiers) {
      n.r_m_case1 += t.association * t.r_m_case1;
      n.r_n_case1 += t.association * t.r_n_case1;
      n.r_n_case2 += t.association * t.r_n_case2;
      n.r_m_case2 += t.association * t.r_m_case2;
      n.leak_m += t.association * t.leak_m;
      n.leak_n += t.association * t.leak_n;
    }
    n.association = 1.0;
    return n;
  }

  double recompute_secrecy() const {
    double total = 0.0;
    for (const auto& t : tiers) total += t.association * t.secrecy();
    return total;
  }
};

// --- validation -------------------------------------------------------------

enum class IssueCode { EmptyTierList, AlphaTooSmall, BadSplit, NonPositiveParameter, NonFinite, BadNomaFlags };

inline const char* to_string(IssueCode c) {
  switch (c) {
    case IssueCode::EmptyTierList: return "EmptyTierList";
    case IssueCode::AlphaTooSmall: return "AlphaTooSmall";
    case IssueCode::BadSplit: return "BadSplit";
    case IssueCode::NonPositiveParameter: return "NonPositiveParameter";
    case IssueCode::NonFinite: return "NonFinite";
    case IssueCode::BadNomaFlags: return "BadNomaFlags";
  }
  return "Unknown";
}

struct ValidationIssue {
  IssueCode code;
  std::string message;
};

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<ValidationIssue> issues)
      : std::invalid_argument(summarize(issues)), issues_(std::move(issues)) {}
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  static std::string summarize(const std::vector<ValidationIssue>& issues) {
    std::string out = "invalid network config:";
    for (const auto& i : issues) out += std::string(" [") + to_string(i.code) + "] " + i.message + ";";
    return out;
  }
  std::vector<ValidationIssue> issues_;
};

inline constexpr double split_epsilon = 1e-12;

/// Checks every invariant of the config and returns all violations (empty when valid).
inline std::vector<ValidationIssue> validate(const NetworkConfig& cfg) {
  std::vector<ValidationIssue> issues;
  auto add = [&](IssueCode c, std::string m) { issues.push_back({c, std::move(m)}); };

  if (cfg.tiers.empty()) add(IssueCode::EmptyTierList, "at least one tier is required");
  for (std::size_t k = 0; k < cfg.tiers.size(); ++k) {
    const auto& t = cfg.tiers[k];
    const std::string tag = "tier[" + std::to_string(k) + "]: ";
    if (!std::isfinite(t.power_linear) || !std::isfinite(t.density) || !std::isfinite(t.bias) ||
        std::isnan(t.alpha)) {
      add(IssueCode::NonFinite, tag + "non-finite parameter");
      continue;
    }
    if (!(t.alpha > 2.0)) add(IssueCode::AlphaTooSmall, tag + "path-loss exponent must exceed 2");
    if (!(t.power_linear > 0.0)) add(IssueCode::NonPositiveParameter, tag + "power must be positive");
    if (!(t.density > 0.0)) add(IssueCode::NonPositiveParameter, tag + "density must be positive");
    if (!(t.bias > 0.0)) add(IssueCode::NonPositiveParameter, tag + "bias must be positive");
  }
  if (!std::isfinite(cfg.noise_linear) || !std::isfinite(cfg.eve_density))
    add(IssueCode::NonFinite, "noise and eavesdropper density must be finite");
  if (cfg.noise_linear < 0.0) add(IssueCode::NonPositiveParameter, "noise power must be >= 0");
  if (cfg.eve_density < 0.0) add(IssueCode::NonPositiveParameter, "eavesdropper density must be >= 0");

  const auto& s = cfg.split;
  if (!std::isfinite(s.a_m) || !std::isfinite(s.a_n) || s.a_m < 0.0 || s.a_n < 0.0 || s.a_m > 1.0 ||
      s.a_n > 1.0)
    add(IssueCode::BadSplit, "split coefficients must lie in [0,1]");
  else if (std::abs(s.a_m + s.a_n - 1.0) > split_epsilon)
    add(IssueCode::BadSplit, "a_m + a_n must equal 1");
  else if (!cfg.oma_mode && s.a_m < s.a_n)
    add(IssueCode::BadSplit, "a_m must be >= a_n outside OMA mode");

  if (!cfg.tier_noma_enabled.empty() && cfg.tier_noma_enabled.size() != cfg.tiers.size())
    add(IssueCode::BadNomaFlags, "per-tier NOMA flags must match the tier count");
  return issues;
}

inline const NetworkConfig& require_valid(const NetworkConfig& cfg) {
  auto issues = validate(cfg);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

/// Default network: P = 40/30/20 dBm, alpha = 3.5/4/4, split (0.6, 0.4), sigma^2 = -90 dBm.
/// Densities default to lambda0 and must be set by the caller's scenario.
inline NetworkConfig table1_config(std::size_t tier_count = 3) {
  static constexpr double power_dbm[] = {40.0, 30.0, 20.0};
  static constexpr double alpha[] = {3.5, 4.0, 4.0};
  if (tier_count < 1 || tier_count > 3) throw std::out_of_range("table1_config supports 1..3 tiers");
  NetworkConfig cfg;
  for (std::size_t k = 0; k < tier_count; ++k)
    cfg.tiers.push_back({dbm_to_linear(power_dbm[k]), lambda0, alpha[k], 1.0});
  cfg.noise_linear = dbm_to_linear(-90.0);
  cfg.split = {0.6, 0.4};
  cfg.eve_density = 1e-7;
  return cfg;
}

}  // namespace snhet
