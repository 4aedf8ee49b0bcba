#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "switchrun/exact.hpp"
#include "switchrun/scan.hpp"

namespace switchrun {

// Seeded, reproducible simulation harness. Per-replica substreams are
// derived from (seed, replica index), so the report is a pure function of
// the configuration regardless of how replicas are distributed over
// workers. Bits are consumed most-significant-first from generator words.

/// splitmix64 (Steele, Lea, Vigna); tiny, seedable, jumpable by reseeding.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline constexpr const char* kGeneratorId = "splitmix64";

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t replica) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (replica + 1)));
  return g.next();
}

/// Fair-coin bit stream, MSB-first per generator word.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t stream_seed) : gen_(stream_seed) {}
  bool next() {
    if (left_ == 0) {
      word_ = gen_.next();
      left_ = 64;
    }
    --left_;
    return (word_ >> left_) & 1u;
  }

 private:
  SplitMix64 gen_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t replicas = 0;
  std::vector<std::size_t> lengths;  // strictly increasing checkpoints
  double epsilon = 1.0;
  std::string generator_id = kGeneratorId;

  void validate() const {
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    if (lengths.empty()) throw ConfigError("lengths must be non-empty");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (lengths[i] < 2) throw ConfigError("lengths must be >= 2");
      if (i > 0 && lengths[i] <= lengths[i - 1])
        throw ConfigError("lengths must be strictly increasing");
    }
    if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
    if (generator_id != kGeneratorId)
      throw ConfigError("unknown generator: " + generator_id);
  }
};

struct SimRecord {
  std::size_t replica = 0;
  std::size_t n = 0;
  long m = 0;
  long z = 0;
};

/// Per-checkpoint aggregates across replicas.
struct LengthAggregate {
  std::size_t n = 0;
  double ratio_mean = 0;  // mean of M / log2(N)
  double ratio_min = 0;
  double ratio_max = 0;
  double mean_m = 0;
  double mean_z = 0;
  // Threshold diagnostics (only for n >= 16, where alpha is defined):
  long alpha1 = 0;
  long alpha2 = 0;
  double alpha1_hit_rate = -1;   // P_hat(M >= alpha1), -> 1
  double alpha2_below_rate = -1; // P_hat(M < alpha2), bounded away from 0
};

struct SimReport {
  SimConfig config;
  std::vector<SimRecord> records;  // replica-major, checkpoint-minor
  std::vector<LengthAggregate> aggregates;
};

namespace detail {

template <class Fn>
void run_replicas(std::size_t replicas, unsigned workers, Fn fn) {
  if (workers <= 1) {
    for (std::size_t r = 0; r < replicas; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([=] {
      for (std::size_t r = w; r < replicas; r += workers) fn(r);
    });
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Scans one substream per replica, recording (M, Z) at each checkpoint of
/// the prefix of that length. Deterministic for any worker count: records
/// land at fixed indices and aggregation is a fixed-order reduction.
inline SimReport simulate_statistics(const SimConfig& config,
                                     unsigned workers = 1) {
  config.validate();
  const std::size_t nlens = config.lengths.size();
  SimReport report;
  report.config = config;
  report.records.resize(config.replicas * nlens);
  detail::run_replicas(config.replicas, workers, [&](std::size_t r) {
    CoinStream coin(substream_seed(config.seed, r));
    StreamScanner scan;
    std::size_t ci = 0;
    for (std::size_t n = 1; ci < nlens; ++n) {
      scan.push(coin.next());
      if (n == config.lengths[ci]) {
        report.records[r * nlens + ci] =
            SimRecord{r, n, scan.longest_switch_run(), scan.longest_head_run()};
        ++ci;
      }
    }
  });
  for (std::size_t ci = 0; ci < nlens; ++ci) {
    LengthAggregate agg;
    agg.n = config.lengths[ci];
    const double lg = std::log2(double(agg.n));
    agg.ratio_min = std::numeric_limits<double>::infinity();
    agg.ratio_max = -agg.ratio_min;
    double sum_ratio = 0, sum_m = 0, sum_z = 0;
    long a1_hits = 0, a2_below = 0;
    if (agg.n >= 16) {
      agg.alpha1 = threshold(agg.n, config.epsilon, ThresholdKind::Alpha1).value;
      agg.alpha2 = threshold(agg.n, config.epsilon, ThresholdKind::Alpha2).value;
    }
    for (std::size_t r = 0; r < config.replicas; ++r) {
      const SimRecord& rec = report.records[r * nlens + ci];
      const double ratio = double(rec.m) / lg;
      sum_ratio += ratio;
      sum_m += double(rec.m);
      sum_z += double(rec.z);
      agg.ratio_min = std::min(agg.ratio_min, ratio);
      agg.ratio_max = std::max(agg.ratio_max, ratio);
      if (agg.n >= 16) {
        a1_hits += (rec.m >= agg.alpha1);
        a2_below += (rec.m < agg.alpha2);
      }
    }
    agg.ratio_mean = sum_ratio / double(config.replicas);
    agg.mean_m = sum_m / double(config.replicas);
    agg.mean_z = sum_z / double(config.replicas);
    if (agg.n >= 16) {
      agg.alpha1_hit_rate = double(a1_hits) / double(config.replicas);
      agg.alpha2_below_rate = double(a2_below) / double(config.replicas);
    }
    report.aggregates.push_back(agg);
  }
  return report;
}

/// Empirical estimate of P(M_N < K-1) with a 3-sigma binomial half-width,
/// alongside the corrected sandwich bounds when K >= 2.
struct EmpiricalBound {
  std::size_t n = 0;
  int k = 0;
  std::size_t replicas = 0;
  double estimate = 0;
  double half_width3 = 0;
  std::optional<BoundPair> corrected;
};

inline EmpiricalBound empirical_prob_M_lt(std::size_t n, int k,
                                          std::size_t replicas,
                                          std::uint64_t seed,
                                          unsigned workers = 1) {
  if (replicas < 100) throw ConfigError("replicas must be >= 100");
  if (k >= 2 && n < 2 * std::size_t(k))
    throw ConfigError("requires n >= 2k");
  std::vector<std::uint8_t> hit(replicas, 0);
  detail::run_replicas(replicas, workers, [&](std::size_t r) {
    CoinStream coin(substream_seed(seed, r));
    StreamScanner scan;
    for (std::size_t i = 0; i < n; ++i) scan.push(coin.next());
    hit[r] = scan.longest_switch_run() < k - 1;
  });
  EmpiricalBound e;
  e.n = n;
  e.k = k;
  e.replicas = replicas;
  long hits = 0;
  for (auto h : hit) hits += h;
  e.estimate = double(hits) / double(replicas);
  e.half_width3 =
      3.0 * std::sqrt(std::max(e.estimate * (1 - e.estimate), 0.25 / double(replicas)) /
                      double(replicas));
  if (k >= 2) e.corrected = theorem41_bounds(n, k, BoundVariant::Corrected);
  return e;
}

/// One row per checkpoint of the limit-theorem diagnostics: the alpha1 hit
/// rate (should approach 1), the alpha2 tail rate (bounded away from 0) and,
/// given a convergent schedule delta, the violation rate of M >= delta_N - 1
/// (should approach 0).
struct CoverageRow {
  std::size_t n = 0;
  long alpha1 = 0;
  double alpha1_hit_rate = 0;
  long alpha2 = 0;
  double alpha2_below_rate = 0;
  double delta_violation_rate = -1;  // -1 when no schedule was supplied
};

inline std::vector<CoverageRow> threshold_coverage(
    const SimConfig& config, unsigned workers = 1,
    const std::function<double(std::size_t)>& delta = nullptr) {
  config.validate();
  for (std::size_t n : config.lengths)
    if (n < 16) throw ConfigError("threshold coverage requires lengths >= 16");
  SimReport report = simulate_statistics(config, workers);
  std::vector<CoverageRow> rows;
  const std::size_t nlens = config.lengths.size();
  for (std::size_t ci = 0; ci < nlens; ++ci) {
    const LengthAggregate& agg = report.aggregates[ci];
    CoverageRow row{agg.n, agg.alpha1, agg.alpha1_hit_rate, agg.alpha2,
                    agg.alpha2_below_rate, -1};
    if (delta) {
      const double d = delta(agg.n);
      if (!(d > 0)) throw ScheduleError("delta schedule must be positive");
      long violations = 0;
      for (std::size_t r = 0; r < config.replicas; ++r)
        violations += (double(report.records[r * nlens + ci].m) >= d - 1);
      row.delta_violation_rate = double(violations) / double(config.replicas);
    }
    rows.push_back(row);
  }
  return rows;
}

struct TrajectoryPoint {
  std::size_t n = 0;
  long m = 0;
  double ratio = 0;  // M / log2(N)
};

inline constexpr std::size_t kTrajectoryBudget = std::size_t(1) << 28;

/// One continuous stream; M at each checkpoint is the prefix statistic, so
/// the reported values are non-decreasing in N.
inline std::vector<TrajectoryPoint> limit_trajectory(
    std::uint64_t seed, const std::vector<std::size_t>& checkpoints) {
  if (checkpoints.empty()) throw ConfigError("checkpoints must be non-empty");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 2 || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
      throw ConfigError("checkpoints must be >= 2 and strictly increasing");
  }
  if (checkpoints.back() > kTrajectoryBudget)
    throw BudgetError("trajectory limited to 2^28 bits");
  CoinStream coin(substream_seed(seed, 0));
  StreamScanner scan;
  std::vector<TrajectoryPoint> out;
  std::size_t ci = 0;
  for (std::size_t n = 1; ci < checkpoints.size(); ++n) {
    scan.push(coin.next());
    if (n == checkpoints[ci]) {
      const long m = scan.longest_switch_run();
      out.push_back({n, m, double(m) / std::log2(double(n))});
      ++ci;
    }
  }
  return out;
}

}  // namespace switchrun
