#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "switchrun/errors.hpp"

namespace switchrun {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using WideFloat = boost::multiprecision::cpp_bin_float_50;

enum class Statistic { M, Z };

/// Exact distribution of M_N or Z_N as big-integer counts over the 2^N
/// equally likely strings. counts[k] = #{x : statistic(x) = k}.
struct RunLengthPmf {
  std::size_t n = 0;
  Statistic statistic = Statistic::M;
  std::vector<BigInt> counts;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& c : counts) t += c;
    return t;
  }
};

enum class BoundVariant { Paper, Corrected };

/// Sandwich bounds on P(M_N < K-1), kept as exact rationals so the
/// comparison against the exact DP probability is itself exact.
struct BoundPair {
  BigRational lower;
  BigRational upper;
  BoundVariant variant = BoundVariant::Corrected;
  std::size_t n = 0;
  int k = 0;
};

enum class ThresholdKind { Alpha1, Alpha2 };

struct ThresholdResult {
  long value = 0;
  bool precision_warning = false;  // floor argument within 2^-40 of an integer
};

// ---------------------------------------------------------------------------
// Run-length dynamic programs.
//
// Counting strings whose longest alternating block is <= L is, through the
// parity-flip bijection, the same as counting strings whose longest constant
// run is <= L. The DP state is the current run length j in 1..L:
//   v_1(t+1) = sum_j v_j(t),   v_{j+1}(t+1) = v_j(t),   v_1(1) = 2,
// which is a push-front of the running total plus a drop of v_L. Both
// counters below exploit that shape, so one length step costs O(1) bigint
// additions regardless of L.
// ---------------------------------------------------------------------------

/// Incremental counter of length-n strings whose longest alternating block
/// (equivalently: constant run) is <= cap. Starts at n = 1.
class AltRunCounter {
 public:
  explicit AltRunCounter(std::size_t cap) : cap_(cap), total_(2) {
    if (cap < 1) throw RangeError("cap must be >= 1");
    v_.push_back(2);
  }

  void step() {  // extend every counted string by one symbol
    BigInt dropped = 0;
    if (v_.size() == cap_) {
      dropped = v_.back();
      v_.pop_back();
    }
    v_.push_front(total_);
    total_ = 2 * total_ - dropped;
    ++length_;
  }

  std::size_t length() const { return length_; }
  const BigInt& total() const { return total_; }

 private:
  std::size_t cap_;
  std::deque<BigInt> v_;
  BigInt total_;
  std::size_t length_ = 1;
};

/// Same machinery for head runs: counts strings with longest 1-run <= cap.
/// State is the current trailing 1-run length 0..cap.
class HeadRunCounter {
 public:
  explicit HeadRunCounter(std::size_t cap) : cap_(cap) {
    if (cap == 0) {
      v_.push_back(1);  // only the string "0"
      total_ = 1;
    } else {
      v_.push_back(1);  // trailing run 0: "0"
      v_.push_back(1);  // trailing run 1: "1"
      total_ = 2;
    }
  }

  void step() {
    BigInt dropped = 0;
    if (v_.size() == cap_ + 1) {
      dropped = v_.back();
      v_.pop_back();
    }
    v_.push_front(total_);
    total_ = 2 * total_ - dropped;
    ++length_;
  }

  std::size_t length() const { return length_; }
  const BigInt& total() const { return total_; }

 private:
  std::size_t cap_;
  std::deque<BigInt> v_;
  BigInt total_;
  std::size_t length_ = 1;
};

/// Exact count of length-n strings whose longest alternating block is <= l.
inline BigInt count_max_alt_block_le(std::size_t n, std::size_t l) {
  if (n < 1) throw RangeError("n must be >= 1");
  if (l == 0) return 0;
  if (l >= n) return BigInt(1) << n;
  AltRunCounter c(l);
  while (c.length() < n) c.step();
  return c.total();
}

inline BigInt count_max_head_run_le(std::size_t n, std::size_t z) {
  if (n < 1) throw RangeError("n must be >= 1");
  HeadRunCounter c(z);
  while (c.length() < n) c.step();
  return c.total();
}

inline RunLengthPmf pmf_M(std::size_t n) {
  RunLengthPmf pmf{n, Statistic::M, std::vector<BigInt>(n)};
  BigInt prev = 0;
  for (std::size_t m = 0; m < n; ++m) {
    BigInt cur = count_max_alt_block_le(n, m + 1);
    pmf.counts[m] = cur - prev;
    prev = std::move(cur);
  }
  return pmf;
}

inline RunLengthPmf pmf_Z(std::size_t n) {
  RunLengthPmf pmf{n, Statistic::Z, std::vector<BigInt>(n + 1)};
  BigInt prev = 0;
  for (std::size_t z = 0; z <= n; ++z) {
    BigInt cur = count_max_head_run_le(n, z);
    pmf.counts[z] = cur - prev;
    prev = std::move(cur);
  }
  return pmf;
}

/// P(M_N < K-1) as an exact rational.
inline BigRational prob_M_lt_exact(std::size_t n, int k) {
  if (n < 1 || k < 1) throw RangeError("need n >= 1, k >= 1");
  return BigRational(count_max_alt_block_le(n, std::size_t(k) - 1),
                     BigInt(1) << n);
}

// ---------------------------------------------------------------------------
// Double-precision DP for lengths beyond the exact big-count limit. Values
// mirror the count DP but are renormalized by powers of two so the state
// never overflows; results are reassembled with ldexp.
// ---------------------------------------------------------------------------

/// P(longest alternating block of an n-string is <= l), double precision.
inline double prob_max_alt_block_le_float(std::size_t n, std::size_t l) {
  if (n < 1) throw RangeError("n must be >= 1");
  if (l == 0) return 0.0;
  if (l >= n) return 1.0;
  std::deque<double> v{2.0};
  double total = 2.0;
  long scale = 0;  // stored values are true counts * 2^-scale
  for (std::size_t t = 1; t < n; ++t) {
    double dropped = 0.0;
    if (v.size() == l) {
      dropped = v.back();
      v.pop_back();
    }
    v.push_front(total);
    total = 2 * total - dropped;
    if (total > 0x1p512) {
      for (auto& x : v) x *= 0x1p-512;
      total *= 0x1p-512;
      scale += 512;
    }
  }
  // probability = total * 2^scale / 2^n
  return std::ldexp(total, static_cast<int>(scale - static_cast<long>(n)));
}

inline double prob_M_lt_float(std::size_t n, int k) {
  if (n < 1 || k < 1) throw RangeError("need n >= 1, k >= 1");
  return prob_max_alt_block_le_float(n, std::size_t(k) - 1);
}

enum class ProbMode { Exact, Float };

/// P(M_N < K-1); exact mode returns the rational DP value as a double.
inline double prob_M_lt(std::size_t n, int k, ProbMode mode) {
  if (mode == ProbMode::Exact)
    return static_cast<double>(prob_M_lt_exact(n, k));
  return prob_M_lt_float(n, k);
}

/// P(M_N = k) for k = 0..limit (inclusive), via differences of the CDF.
/// The mass beyond limit is 1 - sum and can be made negligible by choosing
/// limit a few dozen above log2(n).
inline std::vector<double> pmf_M_float(std::size_t n, std::size_t limit) {
  std::vector<double> p(limit + 1, 0.0);
  double prev = 0.0;
  for (std::size_t m = 0; m <= limit && m < n; ++m) {
    double cur = prob_max_alt_block_le_float(n, m + 1);
    p[m] = cur - prev;
    prev = cur;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Closed forms: window probability, sandwich bounds, thresholds, schedules.
// ---------------------------------------------------------------------------

/// Probability that 2K tosses contain an alternating block of length K.
/// paper: (K+2)/2^K. corrected: (K+2)/2^K - 2^(1-2K), the enumeration-
/// verified value (the paper's decomposition double counts one string pair
/// in its k = K term; see verify_lemma41 in the oracle module).
inline BigRational switch_window_prob(int k, BoundVariant variant) {
  if (k < 2) throw RangeError("k must be >= 2");
  BigRational p(BigInt(k + 2), BigInt(1) << k);
  if (variant == BoundVariant::Corrected)
    p -= BigRational(2, BigInt(1) << (2 * k));
  return p;
}

inline BigRational pow_rational(const BigRational& r, std::size_t e) {
  return BigRational(boost::multiprecision::pow(numerator(r), unsigned(e)),
                     boost::multiprecision::pow(denominator(r), unsigned(e)));
}

/// Sandwich bounds on P(M_N < K-1): (1-p)^([N/K]-1) and (1-p)^([ [N/K]/2 ]),
/// exponents exactly as stated, requires N >= 2K.
inline BoundPair theorem41_bounds(std::size_t n, int k, BoundVariant variant) {
  if (k < 2) throw RangeError("k must be >= 2");
  if (n < 2 * std::size_t(k)) throw RangeError("requires n >= 2k");
  const BigRational q = 1 - switch_window_prob(k, variant);
  const std::size_t ratio = n / std::size_t(k);
  return BoundPair{pow_rational(q, ratio - 1), pow_rational(q, ratio / 2),
                   variant, n, k};
}

/// alpha1/alpha2 thresholds: floor(log2 N - log2 log2 log2 N + log2 log2 e
/// + c) with c = -1-eps (alpha1) or +eps (alpha2). Evaluated in 50-digit
/// arithmetic; a floor argument within 2^-40 of an integer raises the
/// precision_warning flag instead of silently choosing a side.
inline ThresholdResult threshold(std::size_t n, double epsilon,
                                 ThresholdKind kind) {
  if (n < 16) throw RangeError("n must be >= 16");
  if (!(epsilon > 0)) throw RangeError("epsilon must be positive");
  using boost::multiprecision::log;
  const WideFloat ln2 = log(WideFloat(2));
  auto log2w = [&](const WideFloat& x) { return log(x) / ln2; };
  const WideFloat lg_n = log2w(WideFloat(n));
  const WideFloat lll = log2w(log2w(lg_n));
  const WideFloat lle = log2w(WideFloat(1) / ln2);  // log2(log2 e)
  WideFloat arg = lg_n - lll + lle;
  arg += (kind == ThresholdKind::Alpha1) ? WideFloat(-1) - WideFloat(epsilon)
                                         : WideFloat(epsilon);
  const WideFloat fl = boost::multiprecision::floor(arg);
  const WideFloat frac = arg - fl;
  ThresholdResult r;
  r.value = static_cast<long>(fl);
  const WideFloat eps_gate = WideFloat(1) / (BigInt(1) << 40).convert_to<WideFloat>();
  r.precision_warning = (frac < eps_gate) || (WideFloat(1) - frac < eps_gate);
  return r;
}

/// Partial sum of 2^(-gamma_n), n = 1..n_max, for classifying candidate
/// schedules. Negative values are rejected; a zero value is tolerated only
/// at n = 1 so that the canonical divergent schedule log2(n) is admissible.
inline double schedule_partial_sum(
    const std::function<double(std::size_t)>& schedule, std::size_t n_max) {
  if (n_max < 1) throw RangeError("n_max must be >= 1");
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double g = schedule(n);
    if (!(g >= 0) || (g == 0 && n > 1))
      throw ScheduleError("schedule value must be positive at n = " +
                          std::to_string(n));
    sum += std::exp2(-g);
  }
  return sum;
}

/// P(M_N >= m_obs), the randomness-test p-value of an observed M.
inline BigRational p_value_exact(std::size_t n, long m_obs) {
  if (m_obs < 0 || std::size_t(m_obs) > n - 1)
    throw RangeError("m_obs out of range");
  return 1 - BigRational(count_max_alt_block_le(n, std::size_t(m_obs)),
                         BigInt(1) << n);
}

inline double p_value(std::size_t n, long m_obs,
                      ProbMode mode = ProbMode::Exact) {
  if (mode == ProbMode::Exact)
    return static_cast<double>(p_value_exact(n, m_obs));
  if (m_obs < 0 || std::size_t(m_obs) > n - 1)
    throw RangeError("m_obs out of range");
  return 1.0 - prob_max_alt_block_le_float(n, std::size_t(m_obs));
}

}  // namespace switchrun
