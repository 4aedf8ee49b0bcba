#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "switchrun/bitseq.hpp"
#include "switchrun/errors.hpp"

namespace switchrun {

/// Switch counts for one window (head = 0->1, tail = 1->0).
struct SwitchCounts {
  long head_switches = 0;
  long tail_switches = 0;
  long total = 0;
};

/// Pointwise statistics of a whole sequence: M_N, Z_N and the switch total.
struct ScanSummary {
  long longest_switch_run = 0;  // M_N
  long longest_head_run = 0;    // Z_N
  long total_switches = 0;
};

namespace detail {

/// Longest run of 1-bits in the first nbits of the virtual word stream
/// word(0), word(1), ... Bits past nbits in the final word are ignored.
template <class WordFn>
long longest_ones_run_words(WordFn word, std::size_t nbits) {
  const std::size_t nwords = (nbits + 63) / 64;
  long run = 0, best = 0;
  for (std::size_t j = 0; j < nwords; ++j) {
    std::uint64_t w = word(j);
    const unsigned valid =
        (j + 1 == nwords && (nbits & 63)) ? unsigned(nbits & 63) : 64u;
    if (valid < 64) w &= (std::uint64_t{1} << valid) - 1;
    const std::uint64_t full =
        valid == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << valid) - 1;
    if (w == full) {  // run continues across the whole word
      run += valid;
      best = std::max(best, run);
      continue;
    }
    const int trail = std::countr_one(w);
    best = std::max(best, run + trail);
    std::uint64_t m = w;  // max run strictly inside this word
    long k = 0;
    while (m) {
      m &= m << 1;
      ++k;
    }
    best = std::max(best, k);
    run = std::countl_one(w << (64 - valid));
  }
  return best;
}

/// j-th word of the adjacent-difference stream d_i = x_i XOR x_{i+1}.
inline std::uint64_t diff_word(const std::vector<std::uint64_t>& w,
                               std::size_t j) {
  std::uint64_t hi = (j + 1 < w.size()) ? (w[j + 1] & 1u) : 0u;
  return w[j] ^ ((w[j] >> 1) | (hi << 63));
}

}  // namespace detail

// ---- generic per-bit scanners (Bits needs size() and at0(i)) ----
// Used for windowed statistics and by the enumeration oracle, which scans
// raw integer masks through a lightweight adapter.

template <class Bits>
long longest_switch_run_generic(const Bits& x, std::size_t begin0,
                                std::size_t len) {
  long cur = 1, best = 1;
  for (std::size_t i = 1; i < len; ++i) {
    cur = (x.at0(begin0 + i) != x.at0(begin0 + i - 1)) ? cur + 1 : 1;
    best = std::max(best, cur);
  }
  return best - 1;
}

template <class Bits>
long longest_head_run_generic(const Bits& x) {
  long cur = 0, best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cur = x.at0(i) ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

template <class Bits>
long longest_constant_run_generic(const Bits& x) {
  long cur = 1, best = 1;
  for (std::size_t i = 1; i < x.size(); ++i) {
    cur = (x.at0(i) == x.at0(i - 1)) ? cur + 1 : 1;
    best = std::max(best, cur);
  }
  return best;
}

// ---- word-level scanners on BitSequence ----

/// M_N: length of the longest maximal alternating block minus one.
/// Equals the longest run of 1s in the adjacent-difference stream.
inline long longest_switch_run(const BitSequence& x) {
  if (x.size() <= 1) return 0;
  const auto& w = x.words();
  return detail::longest_ones_run_words(
      [&w](std::size_t j) { return detail::diff_word(w, j); }, x.size() - 1);
}

/// Windowed M over X_i,...,X_{i+n-1} (1-based i).
inline long longest_switch_run(const BitSequence& x, std::size_t i,
                               std::size_t n) {
  if (i < 1 || n < 1 || i + n - 1 > x.size())
    throw RangeError("window out of range");
  return longest_switch_run_generic(x, i - 1, n);
}

/// Z_N: length of the longest block of consecutive 1s.
inline long longest_head_run(const BitSequence& x) {
  const auto& w = x.words();
  return detail::longest_ones_run_words(
      [&w](std::size_t j) { return w[j]; }, x.size());
}

/// Length of the longest block of equal consecutive symbols (>= 1).
inline long longest_constant_run(const BitSequence& x) {
  if (x.size() <= 1) return static_cast<long>(x.size());
  const auto& w = x.words();
  return 1 + detail::longest_ones_run_words(
                 [&w](std::size_t j) { return ~detail::diff_word(w, j); },
                 x.size() - 1);
}

/// Head/tail/total switch counts in the window X_m,...,X_{m+n-1}.
inline SwitchCounts switch_counts(const BitSequence& x, std::size_t m,
                                  std::size_t n) {
  if (m < 1 || n < 1 || m + n - 1 > x.size())
    throw RangeError("window out of range");
  SwitchCounts c;
  for (std::size_t i = m + 1; i <= m + n - 1; ++i) {
    int prev = x.bit(i - 1), cur = x.bit(i);
    c.head_switches += (!prev && cur);
    c.tail_switches += (prev && !cur);
  }
  c.total = c.head_switches + c.tail_switches;
  return c;
}

inline long total_switches(const BitSequence& x) {
  if (x.size() <= 1) return 0;
  const auto& w = x.words();
  const std::size_t nbits = x.size() - 1;
  long total = 0;
  for (std::size_t j = 0; j * 64 < nbits; ++j) {
    std::uint64_t d = detail::diff_word(w, j);
    const std::size_t rem = nbits - j * 64;
    if (rem < 64) d &= (std::uint64_t{1} << rem) - 1;
    total += std::popcount(d);
  }
  return total;
}

/// I(N,K): maximum number of 1s over all length-K windows.
inline long window_max_sum(const BitSequence& x, std::size_t k) {
  if (k < 1 || k > x.size()) throw RangeError("window length out of range");
  long sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += x.at0(i);
  long best = sum;
  for (std::size_t i = k; i < x.size(); ++i) {
    sum += x.at0(i) - x.at0(i - k);
    best = std::max(best, sum);
  }
  return best;
}

/// Parity flip: with 0-based index j, Y_j = X_j for even j, 1 - X_j for odd.
/// Bijection mapping alternating blocks of X to constant blocks of Y.
inline BitSequence switch_transform(const BitSequence& x) {
  std::vector<std::uint64_t> w = x.words();
  for (auto& word : w) word ^= 0xAAAAAAAAAAAAAAAAull;
  return BitSequence::from_words(std::move(w), x.size());
}

/// True iff the last L symbols form a fully alternating block.
inline bool tail_alternating(const BitSequence& x, std::size_t l) {
  if (l < 1 || l > x.size()) throw RangeError("tail length out of range");
  for (std::size_t i = x.size() - l + 1; i < x.size(); ++i)
    if (x.at0(i) == x.at0(i - 1)) return false;
  return true;
}

inline ScanSummary scan_summary(const BitSequence& x) {
  return ScanSummary{longest_switch_run(x), longest_head_run(x),
                     total_switches(x)};
}

/// Constant-memory single-pass scanner for streamed bits. Tracks the current
/// alternating-run and head-run lengths only, so arbitrarily long streams
/// can be scanned with checkpoints taken mid-stream.
class StreamScanner {
 public:
  void push(bool b) {
    if (n_ == 0) {
      cur_alt_ = 1;
    } else if (b != prev_) {
      ++cur_alt_;
      ++total_switches_;
    } else {
      cur_alt_ = 1;
    }
    max_alt_ = std::max(max_alt_, cur_alt_);
    cur_head_ = b ? cur_head_ + 1 : 0;
    max_head_ = std::max(max_head_, cur_head_);
    prev_ = b;
    ++n_;
  }

  std::size_t size() const { return n_; }
  long longest_switch_run() const { return n_ ? max_alt_ - 1 : 0; }
  long longest_head_run() const { return max_head_; }
  long total_switches() const { return total_switches_; }

 private:
  std::size_t n_ = 0;
  bool prev_ = false;
  long cur_alt_ = 0, max_alt_ = 0;
  long cur_head_ = 0, max_head_ = 0;
  long total_switches_ = 0;
};

}  // namespace switchrun
