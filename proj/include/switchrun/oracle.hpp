#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "switchrun/exact.hpp"
#include "switchrun/scan.hpp"

namespace switchrun {

// Exhaustive enumeration over {0,1}^N. Ground truth for every finite-N
// claim; everything here is brute force on purpose and stays independent of
// the dynamic programs it checks. Strings are iterated as integers
// 0..2^N-1 with bit i (LSB) mapped to position i+1.

inline constexpr std::size_t kEnumerationBudgetBits = 24;

struct TableReport {
  std::size_t n = 0;
  Statistic statistic = Statistic::M;
  std::vector<BigInt> expected;
  std::vector<BigInt> observed;
  bool match = false;
};

struct Lemma41Report {
  int k = 0;
  BigRational exact;      // enumerated P(M_2K >= K-1)
  BigRational paper;      // (K+2)/2^K
  BigRational corrected;  // (K+2)/2^K - 2^(1-2K)
  bool paper_equal = false;
  bool corrected_equal = false;
};

struct CorrelationReport {
  std::size_t n = 0;
  int k = 0;
  BigRational p_joint;    // P(D1 D0)
  BigRational p_product;  // P(D1) P(D0)
  bool holds = false;
};

namespace detail {

/// Adapter presenting an integer mask as a bits-like object for the core
/// generic scanners.
struct MaskBits {
  std::uint64_t mask;
  std::size_t n;
  std::size_t size() const { return n; }
  int at0(std::size_t i) const { return int((mask >> i) & 1u); }
};

}  // namespace detail

/// Exact PMF over masks in [lo, hi); partial ranges exist so that
/// partitioned runs can be aggregated and checked against a full run.
inline std::vector<BigInt> enumerate_counts_range(std::size_t n, Statistic s,
                                                  std::uint64_t lo,
                                                  std::uint64_t hi) {
  std::vector<BigInt> counts(s == Statistic::M ? n : n + 1, BigInt(0));
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    detail::MaskBits bits{mask, n};
    long v = (s == Statistic::M) ? longest_switch_run_generic(bits, 0, n)
                                 : longest_head_run_generic(bits);
    ++counts[std::size_t(v)];
  }
  return counts;
}

inline RunLengthPmf enumerate_pmf(std::size_t n, Statistic s,
                                  unsigned workers = 1) {
  if (n < 1 || n > kEnumerationBudgetBits)
    throw BudgetError("enumeration limited to n <= 24");
  const std::uint64_t end = std::uint64_t(1) << n;
  RunLengthPmf pmf{n, s, {}};
  if (workers <= 1) {
    pmf.counts = enumerate_counts_range(n, s, 0, end);
    return pmf;
  }
  std::vector<std::vector<BigInt>> partial(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = end / workers * w;
    const std::uint64_t hi = (w + 1 == workers) ? end : end / workers * (w + 1);
    pool.emplace_back([&partial, w, n, s, lo, hi] {
      partial[w] = enumerate_counts_range(n, s, lo, hi);
    });
  }
  for (auto& t : pool) t.join();
  pmf.counts.assign(s == Statistic::M ? n : n + 1, BigInt(0));
  for (const auto& part : partial)
    for (std::size_t i = 0; i < part.size(); ++i) pmf.counts[i] += part[i];
  return pmf;
}

/// The eight published distributions for N = 2..5.
inline std::vector<TableReport> verify_paper_tables() {
  struct Entry {
    std::size_t n;
    Statistic s;
    std::vector<long> expected;
  };
  const std::vector<Entry> entries = {
      {2, Statistic::M, {2, 2}},
      {3, Statistic::M, {2, 4, 2}},
      {4, Statistic::M, {2, 8, 4, 2}},
      {5, Statistic::M, {2, 14, 10, 4, 2}},
      {2, Statistic::Z, {1, 2, 1}},
      {3, Statistic::Z, {1, 4, 2, 1}},
      {4, Statistic::Z, {1, 7, 5, 2, 1}},
      {5, Statistic::Z, {1, 12, 11, 5, 2, 1}},
  };
  std::vector<TableReport> reports;
  for (const auto& e : entries) {
    TableReport r;
    r.n = e.n;
    r.statistic = e.s;
    r.expected.assign(e.expected.begin(), e.expected.end());
    r.observed = enumerate_pmf(e.n, e.s).counts;
    r.match = (r.expected == r.observed);
    reports.push_back(std::move(r));
  }
  return reports;
}

/// Enumerates all 2^(2K) strings and compares P(M_2K >= K-1) against both
/// closed forms.
inline Lemma41Report verify_lemma41(int k) {
  if (k < 2 || k > 12) throw BudgetError("k must be in [2, 12]");
  const std::size_t n = 2 * std::size_t(k);
  const std::uint64_t end = std::uint64_t(1) << n;
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    detail::MaskBits bits{mask, n};
    if (longest_switch_run_generic(bits, 0, n) >= k - 1) ++hits;
  }
  Lemma41Report r;
  r.k = k;
  r.exact = BigRational(hits, end);
  r.paper = switch_window_prob(k, BoundVariant::Paper);
  r.corrected = switch_window_prob(k, BoundVariant::Corrected);
  r.paper_equal = (r.exact == r.paper);
  r.corrected_equal = (r.exact == r.corrected);
  return r;
}

namespace detail {

/// Whether the K-symbol window starting at 0-based position p alternates.
inline bool window_alternates(std::uint64_t mask, std::size_t p, int k) {
  if (k <= 1) return true;
  const std::uint64_t d = mask ^ (mask >> 1);  // d_i = (x_i != x_{i+1})
  const std::uint64_t need = (std::uint64_t(1) << (k - 1)) - 1;
  return ((d >> p) & need) == need;
}

}  // namespace detail

/// Correlation inequality P(D1 D0) >= P(D1) P(D0) from the sandwich proof,
/// with the events built exactly as defined there:
///   B_j = {window of length K at position j+1 alternates}, j = 0..N-K
///   C_l = union of B_j for j = lK..(l+1)K, l = 0..[(N-2K)/K]
///   D0 = union of even-indexed C_l, D1 = union of odd-indexed C_l.
/// An empty union (the N = 2K degenerate case for D1) has probability 0.
inline CorrelationReport verify_correlation_inequality(std::size_t n, int k) {
  if (k < 2 || n < 2 * std::size_t(k)) throw RangeError("requires n >= 2k");
  if (n > kEnumerationBudgetBits) throw BudgetError("n exceeds 2^24 budget");
  const std::size_t l_max = (n - 2 * std::size_t(k)) / std::size_t(k);
  const std::uint64_t end = std::uint64_t(1) << n;
  std::uint64_t c_joint = 0, c_d0 = 0, c_d1 = 0;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    bool d0 = false, d1 = false;
    for (std::size_t l = 0; l <= l_max; ++l) {
      bool cl = false;
      for (std::size_t j = l * k; j <= (l + 1) * std::size_t(k) && !cl; ++j)
        cl = detail::window_alternates(mask, j, k);
      if (cl) ((l % 2 == 0) ? d0 : d1) = true;
    }
    c_d0 += d0;
    c_d1 += d1;
    c_joint += (d0 && d1);
  }
  CorrelationReport r;
  r.n = n;
  r.k = k;
  r.p_joint = BigRational(c_joint, end);
  r.p_product = BigRational(c_d0, end) * BigRational(c_d1, end);
  r.holds = (r.p_joint >= r.p_product);
  return r;
}

}  // namespace switchrun
