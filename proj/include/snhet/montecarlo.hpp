#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "snhet/core_model.hpp"

namespace snhet::mc {

/// Simulation disc. User metrics put the typical user at the centre; eavesdropper metrics the serving BS.
struct SimWindow {
  double radius = 1e4;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for (seed, stream, index): iteration i of stream s always sees the same numbers.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  return splitmix64(a ^ splitmix64(index));
}

inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(stream_key(seed, stream, index));
}

/// Uniform on the open interval (0, 1) with 53 random bits; never returns an endpoint.
inline double uniform01(Rng& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }
/// Unit-mean exponential.
inline double exp1(Rng& rng) { return -std::log(uniform01(rng)); }

inline std::uint64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> d(mean);
  return d(rng);
}

struct Point {
  double x, y;
};

/// Homogeneous PPP on the window disc centred at the origin.
inline std::vector<Point> sample_hppp(Rng& rng, double density, const SimWindow& w) {
  if (density < 0.0) throw DomainError("sample_hppp: density must be >= 0");
  std::vector<Point> pts;
  const auto n = poisson(rng, density * pi * w.radius * w.radius);
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = w.radius * std::sqrt(uniform01(rng));
    const double th = 2.0 * pi * uniform01(rng);
    pts.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return pts;
}

/// s^(-alpha/2) with sqrt chains when alpha is a multiple of 1/2.
class PathLoss {
 public:
  explicit PathLoss(double alpha) : half_(alpha / 2.0) {
    const double q = 4.0 * half_;
    quarters_ = (q == std::round(q) && q <= 40.0) ? static_cast<int>(q) : -1;
  }
  double operator()(double s) const {
    if (quarters_ < 0) return std::pow(s, -half_);
    double v = 1.0;
    for (int i = 0; i < quarters_ / 4; ++i) v *= s;
    const int rem = quarters_ % 4;
    if (rem) {
      const double r2 = std::sqrt(s);
      if (rem & 2) v *= r2;
      if (rem & 1) v *= std::sqrt(r2);
    }
    return 1.0 / v;
  }

 private:
  double half_;
  int quarters_;
};

/// Tier constants the simulator touches in its inner loops.
struct SimTier {
  double power, density, alpha, bias;
  PathLoss loss;
};

inline std::vector<SimTier> sim_tiers(const NetworkConfig& cfg) {
  std::vector<SimTier> out;
  for (const auto& t : cfg.tiers) out.push_back({t.power_linear, t.density, t.alpha, t.bias, PathLoss(t.alpha)});
  return out;
}

/// One association draw: nearest BS distance per tier, winner of max P B r^-alpha. tier = npos if all tiers empty.
struct AssociationDraw {
  std::size_t tier = static_cast<std::size_t>(-1);
  double distance = 0.0;
};

inline AssociationDraw draw_association(Rng& rng, const std::vector<SimTier>& tiers, const SimWindow& w) {
  AssociationDraw best;
  double best_metric = -1.0;
  const double w2 = w.radius * w.radius;
  for (std::size_t j = 0; j < tiers.size(); ++j) {
    const double s = exp1(rng) / (pi * tiers[j].density);  // squared nearest distance
    if (s > w2) continue;
    const double metric = tiers[j].power * tiers[j].bias * tiers[j].loss(s);
    if (metric > best_metric) {
      best_metric = metric;
      best = {j, std::sqrt(s)};
    }
  }
  return best;
}

/// Serving distance conditioned on association with tier k, by rejection. Counts all-empty draws.
inline double draw_serving_distance(Rng& rng, const std::vector<SimTier>& tiers, std::size_t k, const SimWindow& w,
                                    std::uint64_t& degenerate) {
  for (;;) {
    const auto a = draw_association(rng, tiers, w);
    if (a.tier == static_cast<std::size_t>(-1)) {
      ++degenerate;
      continue;
    }
    if (a.tier == k) return a.distance;
  }
}

/// Independent generators for the parts of one snapshot, all derived from one key. Points are drawn outward
/// from the centre, so a larger window only appends far points and leaves the near field of every part as is.
class SnapshotStreams {
 public:
  enum Part : std::uint64_t { Serving = 1, Fading, FarField, NearField, Eavesdroppers, EveField };

  explicit SnapshotStreams(std::uint64_t key) : key_(key) {}
  Rng operator()(std::uint64_t part, std::uint64_t sub = 0) const {
    return Rng(splitmix64(key_ ^ splitmix64((part << 40) + sub)));
  }
  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

/// Sum of P g s^(-alpha/2) over a tier's PPP between squared radii from2 and w2, drawn outward.
inline double ring_interference(Rng& rng, const SimTier& t, double from2, double w2) {
  const double rate = pi * t.density;
  double acc = 0.0;
  for (double d2 = from2;;) {
    d2 += exp1(rng) / rate;
    if (d2 > w2) break;
    acc += exp1(rng) * t.loss(d2);
  }
  return t.power * acc;
}

/// Out-of-cell interference at a user at distance r from its tier-k server: tier j contributes from
/// the annulus between its guard radius (no tier-j BS may beat the server) and the window edge.
inline double user_interference(const SnapshotStreams& st, std::uint64_t part, const std::vector<SimTier>& tiers,
                                std::size_t k, double r, const SimWindow& w) {
  const auto& sk = tiers[k];
  const double served = sk.power * sk.bias * sk.loss(r * r);  // biased received power from the server
  const double w2 = w.radius * w.radius;
  double total = 0.0;
  for (std::size_t j = 0; j < tiers.size(); ++j) {
    const auto& t = tiers[j];
    // Guard: P_j B_j y^-alpha_j = served.
    const double y2 = std::pow(t.power * t.bias / served, 2.0 / t.alpha);
    if (y2 >= w2) continue;
    auto rng = st(part, j);
    total += ring_interference(rng, t, y2, w2);
  }
  return total;
}

/// Full-plane interference (no exclusion) at a point, in the window disc around it.
inline double plane_interference(const SnapshotStreams& st, std::uint64_t part, const std::vector<SimTier>& tiers,
                                 const SimWindow& w) {
  double total = 0.0;
  for (std::size_t j = 0; j < tiers.size(); ++j) {
    auto rng = st(part, j);
    total += ring_interference(rng, tiers[j], 0.0, w.radius * w.radius);
  }
  return total;
}

/// Largest signal/(interference + noise) over a PPP of eavesdroppers around the tier-k server, for unit power split.
/// Candidates are visited strongest-signal first; each has its own interference field, built outward, and is
/// dropped as soon as its partial SINR cannot beat the incumbent.
inline double strongest_eavesdropper(const SnapshotStreams& st, const std::vector<SimTier>& tiers, std::size_t k,
                                     double eve_density, double noise, const SimWindow& w) {
  if (eve_density <= 0.0) return 0.0;
  const double w2 = w.radius * w.radius;
  struct Candidate {
    double signal;
    std::uint64_t index;  // rank by distance, which keys the candidate's interference streams
  };
  std::vector<Candidate> eves;
  {
    auto rng = st(SnapshotStreams::Eavesdroppers);
    const double rate = pi * eve_density;
    for (double d2 = 0.0;;) {
      d2 += exp1(rng) / rate;
      if (d2 > w2) break;
      eves.push_back({tiers[k].power * exp1(rng) * tiers[k].loss(d2), eves.size()});
    }
  }
  std::sort(eves.begin(), eves.end(), [](const Candidate& a, const Candidate& b) {
    return a.signal != b.signal ? a.signal > b.signal : a.index < b.index;
  });
  double best = 0.0;
  for (const auto& c : eves) {
    const double s = c.signal;
    if (noise > 0.0 && s / noise <= best) break;
    double interference = noise;
    bool beaten = false;
    for (std::size_t j = 0; j < tiers.size() && !beaten; ++j) {
      const auto& t = tiers[j];
      auto rng = st(SnapshotStreams::EveField + c.index * 16, j);
      const double rate = pi * t.density;
      for (double d2 = 0.0;;) {
        d2 += exp1(rng) / rate;
        if (d2 > w2) break;
        interference += t.power * exp1(rng) * t.loss(d2);
        if (s <= best * interference) {
          beaten = true;
          break;
        }
      }
    }
    if (!beaten) best = interference > 0.0 ? s / interference : std::numeric_limits<double>::infinity();
  }
  return best;
}

/// Record of one network snapshot for a tier-k NOMA pair.
struct Snapshot {
  std::size_t tier = 0;
  CaseLabel label = CaseLabel::CaseI;
  double r_a = 0.0, r_s = 0.0;
  double gamma_mm = 0.0;  // far user, own message
  double gamma_nm = 0.0;  // near user, far user's message
  double gamma_nn = 0.0;  // near user, own message after SIC
  double eve_m = 0.0;     // strongest eavesdropper SINR on each message
  double eve_n = 0.0;
};

/// One snapshot with the pair served by tier k (just the first user where NOMA is off). r_a is fixed or drawn from the tier-k serving law.
inline Snapshot simulate_tier_realization(const NetworkConfig& cfg, const std::vector<SimTier>& tiers, std::size_t k,
                                          const SnapshotStreams& st, const FirstUserPlacement& placement,
                                          const SimWindow& w, std::uint64_t& degenerate) {
  Snapshot snap;
  snap.tier = k;
  auto serving = st(SnapshotStreams::Serving);
  if (const auto* f = std::get_if<FixedPlacement>(&placement))
    snap.r_a = f->radius;
  else
    snap.r_a = draw_serving_distance(serving, tiers, k, w, degenerate);
  const auto split = effective_split(cfg, k);
  const double pk = tiers[k].power, noise = cfg.noise_linear;
  auto fading = st(SnapshotStreams::Fading);

  if (!noma_active(cfg, k)) {
    // No second user: the first user is served alone.
    snap.r_s = std::numeric_limits<double>::infinity();
    snap.label = CaseLabel::CaseII;
    const double sig = pk * exp1(fading) * tiers[k].loss(snap.r_a * snap.r_a);
    snap.gamma_nn = sig / (user_interference(st, SnapshotStreams::NearField, tiers, k, snap.r_a, w) + noise);
  } else {
    snap.r_s = draw_serving_distance(serving, tiers, k, w, degenerate);
    snap.label = snap.r_s <= snap.r_a ? CaseLabel::CaseI : CaseLabel::CaseII;
    const double d_m = snap.label == CaseLabel::CaseI ? snap.r_a : snap.r_s;
    const double d_n = snap.label == CaseLabel::CaseI ? snap.r_s : snap.r_a;
    const double sig_m = pk * exp1(fading) * tiers[k].loss(d_m * d_m);
    const double sig_n = pk * exp1(fading) * tiers[k].loss(d_n * d_n);
    const double i_m = user_interference(st, SnapshotStreams::FarField, tiers, k, d_m, w);
    const double i_n = user_interference(st, SnapshotStreams::NearField, tiers, k, d_n, w);
    snap.gamma_mm = split.a_m * sig_m / (split.a_n * sig_m + i_m + noise);
    snap.gamma_nm = split.a_m * sig_n / (split.a_n * sig_n + i_n + noise);
    snap.gamma_nn = split.a_n * sig_n / (i_n + noise);
  }

  const double eve = strongest_eavesdropper(st, tiers, k, cfg.eve_density, noise, w);
  snap.eve_m = split.a_m * eve;
  snap.eve_n = split.a_n * eve;
  return snap;
}

/// One snapshot including the association of the first user.
inline Snapshot simulate_realization(const NetworkConfig& cfg, Rng& rng, const FirstUserPlacement& placement,
                                     const SimWindow& w = {}, std::uint64_t* degenerate = nullptr) {
  require_valid(cfg);
  const auto tiers = sim_tiers(cfg);
  std::uint64_t local = 0;
  auto& deg = degenerate ? *degenerate : local;
  AssociationDraw a;
  for (;;) {
    a = draw_association(rng, tiers, w);
    if (a.tier != static_cast<std::size_t>(-1)) break;
    ++deg;
  }
  // Under random placement the first user's own association draw supplies r_a.
  const FirstUserPlacement p = is_fixed(placement) ? placement : FirstUserPlacement{FixedPlacement{a.distance}};
  return simulate_tier_realization(cfg, tiers, a.tier, SnapshotStreams(rng()), p, w, deg);
}

// --- estimation -------------------------------------------------------------

struct MonteCarloOptions {
  std::size_t iterations = 100000;  // per tier
  std::uint64_t seed = 1;
  SimWindow window;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t block = 256;
};

struct TierEstimates {
  Estimate r_m_case1, r_n_case1, r_n_case2, r_m_case2, leak_m, leak_n;
  Estimate association;
  Estimate secrecy;  // clipped per-tier secrecy at the averaged level
};

struct MonteCarloResult {
  std::vector<TierEstimates> tiers;
  // Association-weighted sum of each component over tiers; association is 1 and secrecy is secrecy_total.
  TierEstimates network;
  Estimate secrecy_total;
  std::uint64_t degenerate = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;

  /// Point values in the analytic result layout.
  RateBreakdown breakdown() const {
    RateBreakdown b;
    for (const auto& t : tiers)
      b.tiers.push_back({t.r_m_case1.mean, t.r_n_case1.mean, t.r_n_case2.mean, t.r_m_case2.mean, t.leak_m.mean,
                         t.leak_n.mean, t.association.mean});
    b.secrecy_total = secrecy_total.mean;
    return b;
  }
};

namespace detail {

inline constexpr std::size_t n_comp = 6;  // m1, n1, n2, m2, leak_m, leak_n

struct Moments {
  std::array<double, n_comp> sum{};
  std::array<std::array<double, n_comp>, n_comp> cross{};
  std::size_t n = 0;
  std::uint64_t degenerate = 0;

  void add(const std::array<double, n_comp>& x) {
    for (std::size_t i = 0; i < n_comp; ++i) {
      sum[i] += x[i];
      for (std::size_t j = i; j < n_comp; ++j) cross[i][j] += x[i] * x[j];
    }
    ++n;
  }
  void merge(const Moments& o) {
    for (std::size_t i = 0; i < n_comp; ++i) {
      sum[i] += o.sum[i];
      for (std::size_t j = i; j < n_comp; ++j) cross[i][j] += o.cross[i][j];
    }
    n += o.n;
    degenerate += o.degenerate;
  }
  double mean(std::size_t i) const { return sum[i] / static_cast<double>(n); }
  double cov(std::size_t i, std::size_t j) const {
    if (n < 2) return 0.0;
    if (i > j) std::swap(i, j);
    const double nn = static_cast<double>(n);
    return (cross[i][j] - sum[i] * sum[j] / nn) / (nn - 1.0);
  }
};

inline unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(block_index) for every block; results merged by the caller in block order.
template <class Body>
void for_blocks(std::size_t blocks, unsigned threads, Body&& body) {
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1)));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t b; (b = next.fetch_add(1)) < blocks;) body(b);
    });
  for (auto& th : pool) th.join();
}

inline Estimate make_estimate(double mean, double var_of_mean, std::size_t n, std::uint64_t seed) {
  return {mean, std::sqrt(std::max(var_of_mean, 0.0)), n, seed};
}

}  // namespace detail

/// Frequency of each tier winning the biased max-power association.
inline std::vector<Estimate> empirical_association(const NetworkConfig& cfg, std::size_t n_iter, std::uint64_t seed,
                                                   const SimWindow& w = {}) {
  require_valid(cfg);
  if (n_iter < 1) throw std::invalid_argument("empirical_association: n_iter must be >= 1");
  const auto tiers = sim_tiers(cfg);
  std::vector<std::size_t> count(tiers.size(), 0);
  constexpr std::uint64_t stream = 0xA55;
  for (std::size_t i = 0; i < n_iter; ++i) {
    auto rng = stream_rng(seed, stream, i);
    for (;;) {
      const auto a = draw_association(rng, tiers, w);
      if (a.tier == static_cast<std::size_t>(-1)) continue;
      ++count[a.tier];
      break;
    }
  }
  std::vector<Estimate> out;
  const double n = static_cast<double>(n_iter);
  for (auto c : count) {
    const double p = static_cast<double>(c) / n;
    out.push_back(detail::make_estimate(p, p * (1.0 - p) / n, n_iter, seed));
  }
  return out;
}

/// Per-tier rate components, leakage, and the combined secrecy rate by simulation.
inline MonteCarloResult estimate_rates(const NetworkConfig& cfg, const FirstUserPlacement& placement,
                                       const MonteCarloOptions& opt = {}) {
  require_valid(cfg);
  if (opt.iterations < 1) throw std::invalid_argument("estimate_rates: n_iter must be >= 1");
  if (!(opt.window.radius > 0.0)) throw std::invalid_argument("simulation window radius must be > 0");
  const auto tiers = sim_tiers(cfg);
  const std::size_t block = std::max<std::size_t>(opt.block, 1);
  const std::size_t blocks = (opt.iterations + block - 1) / block;
  const unsigned threads = detail::worker_count(opt.threads);

  MonteCarloResult out;
  out.iterations = opt.iterations;
  out.seed = opt.seed;
  const auto assoc = empirical_association(cfg, opt.iterations, opt.seed, opt.window);

  std::vector<detail::Moments> per_tier;
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    std::vector<detail::Moments> parts(blocks);
    detail::for_blocks(blocks, threads, [&](std::size_t b) {
      auto& m = parts[b];
      const std::size_t end = std::min(opt.iterations, (b + 1) * block);
      for (std::size_t i = b * block; i < end; ++i) {
        const SnapshotStreams st(stream_key(opt.seed, k + 1, i));
        const auto s = simulate_tier_realization(cfg, tiers, k, st, placement, opt.window, m.degenerate);
        const bool one = s.label == CaseLabel::CaseI;
        const double far = std::log2(1.0 + std::min(s.gamma_mm, s.gamma_nm));
        const double near = std::log2(1.0 + s.gamma_nn);
        m.add({one ? far : 0.0, one ? near : 0.0, one ? 0.0 : near, one ? 0.0 : far, std::log2(1.0 + s.eve_m),
               std::log2(1.0 + s.eve_n)});
      }
    });
    detail::Moments total;
    for (const auto& p : parts) total.merge(p);
    per_tier.push_back(total);
  }

  double sec_mean = 0.0, sec_var = 0.0, weighted_sq = 0.0;
  std::array<double, detail::n_comp> net_mean{}, net_var{}, net_sq{};
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    const auto& m = per_tier[k];
    const double n = static_cast<double>(m.n);
    TierEstimates te;
    Estimate* comp[detail::n_comp] = {&te.r_m_case1, &te.r_n_case1, &te.r_n_case2, &te.r_m_case2, &te.leak_m, &te.leak_n};
    for (std::size_t i = 0; i < detail::n_comp; ++i)
      *comp[i] = detail::make_estimate(m.mean(i), m.cov(i, i) / n, m.n, opt.seed);

    // [R - L]^+ on the averages; the delta-method gradient is +-1 on the active pairs.
    std::array<double, detail::n_comp> grad{};
    double sec = 0.0;
    const std::pair<std::size_t, std::size_t> pairs[] = {{1, 5}, {0, 4}, {2, 5}, {3, 4}};
    for (auto [r, l] : pairs) {
      const double d = m.mean(r) - m.mean(l);
      if (d > 0.0) {
        sec += d;
        grad[r] += 1.0;
        grad[l] -= 1.0;
      }
    }
    double var = 0.0;
    for (std::size_t i = 0; i < detail::n_comp; ++i)
      for (std::size_t j = 0; j < detail::n_comp; ++j) var += grad[i] * grad[j] * m.cov(i, j);
    te.secrecy = detail::make_estimate(sec, var / n, m.n, opt.seed);
    te.association = assoc[k];
    out.degenerate += m.degenerate;

    const double a = assoc[k].mean;
    for (std::size_t i = 0; i < detail::n_comp; ++i) {
      net_mean[i] += a * m.mean(i);
      net_var[i] += a * a * m.cov(i, i) / n;
      net_sq[i] += a * m.mean(i) * m.mean(i);
    }
    sec_mean += a * sec;
    sec_var += a * a * var / n;
    weighted_sq += a * sec * sec;
    out.tiers.push_back(te);
  }
  // Multinomial spread of the association weights.
  sec_var += (weighted_sq - sec_mean * sec_mean) / static_cast<double>(opt.iterations);
  out.secrecy_total = detail::make_estimate(sec_mean, sec_var, opt.iterations, opt.seed);
  const double n_all = static_cast<double>(opt.iterations);
  Estimate* net[detail::n_comp] = {&out.network.r_m_case1, &out.network.r_n_case1, &out.network.r_n_case2,
                                   &out.network.r_m_case2, &out.network.leak_m,    &out.network.leak_n};
  for (std::size_t i = 0; i < detail::n_comp; ++i)
    *net[i] = detail::make_estimate(net_mean[i], net_var[i] + (net_sq[i] - net_mean[i] * net_mean[i]) / n_all,
                                    opt.iterations, opt.seed);
  out.network.association = {1.0, 0.0, opt.iterations, opt.seed};
  out.network.secrecy = out.secrecy_total;
  return out;
}

}  // namespace snhet::mc
