#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "switchrun/bitseq.hpp"
#include "switchrun/montecarlo.hpp"
#include "switchrun/scan.hpp"

using namespace switchrun;

namespace {

BitSequence seq_from_mask(std::uint64_t mask, std::size_t n) {
  BitSequence s;
  s.append_word(mask, unsigned(n));
  return s;
}

BitSequence random_sequence(std::uint64_t seed, std::size_t n) {
  SplitMix64 g(seed);
  std::vector<std::uint64_t> words((n + 63) / 64);
  for (auto& w : words) w = g.next();
  return BitSequence::from_words(std::move(words), n);
}

}  // namespace

TEST_CASE("parse_bits ascii01") {
  CHECK(parse_bits("0101", BitFormat::Ascii01).to_string() == "0101");
  CHECK(parse_bits("01 10\n", BitFormat::Ascii01).to_string() == "0110");
  CHECK_THROWS_AS(parse_bits("  \n ", BitFormat::Ascii01), EmptyInput);
  try {
    parse_bits("01x1", BitFormat::Ascii01);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
}

TEST_CASE("parse_bits raw is MSB-first") {
  std::string raw("\xA0", 1);
  CHECK(parse_bits(raw, BitFormat::RawMsbFirst).to_string() == "10100000");
  CHECK_THROWS_AS(parse_bits("", BitFormat::RawMsbFirst), EmptyInput);
}

TEST_CASE("switch_counts examples") {
  auto s = BitSequence::from_string("0101");
  auto c = switch_counts(s, 1, 4);
  CHECK(c.head_switches == 2);
  CHECK(c.tail_switches == 1);
  CHECK(c.total == 3);

  c = switch_counts(BitSequence::from_string("10011"), 1, 5);
  CHECK(c.head_switches == 1);
  CHECK(c.tail_switches == 1);
  CHECK(c.total == 2);

  c = switch_counts(BitSequence::from_string("1111"), 1, 4);
  CHECK(c.total == 0);

  CHECK_THROWS_AS(switch_counts(s, 2, 4), RangeError);
}

TEST_CASE("longest_switch_run examples") {
  CHECK(longest_switch_run(BitSequence::from_string("0101")) == 3);
  CHECK(longest_switch_run(BitSequence::from_string("10011")) == 1);
  CHECK(longest_switch_run(BitSequence::from_string("0000")) == 0);
  CHECK(longest_switch_run(BitSequence::from_string("1")) == 0);
  // windowed variant
  CHECK(longest_switch_run(BitSequence::from_string("001010011"), 2, 5) == 4);
  CHECK(longest_switch_run(BitSequence::from_string("001010011"), 3, 5) == 3);
  CHECK_THROWS_AS(
      longest_switch_run(BitSequence::from_string("0101"), 3, 4), RangeError);
}

TEST_CASE("longest_head_run examples") {
  CHECK(longest_head_run(BitSequence::from_string("1101")) == 2);
  CHECK(longest_head_run(BitSequence::from_string("0110")) == 2);
  CHECK(longest_head_run(BitSequence::from_string("0000")) == 0);
}

TEST_CASE("window_max_sum examples") {
  CHECK(window_max_sum(BitSequence::from_string("1111"), 2) == 2);
  CHECK(window_max_sum(BitSequence::from_string("1101"), 2) == 2);
  CHECK(window_max_sum(BitSequence::from_string("0000"), 3) == 0);
  CHECK_THROWS_AS(window_max_sum(BitSequence::from_string("01"), 3),
                  RangeError);
}

TEST_CASE("switch_transform examples") {
  CHECK(switch_transform(BitSequence::from_string("0101")).to_string() ==
        "0000");
  CHECK(switch_transform(BitSequence::from_string("0000")).to_string() ==
        "0101");
  CHECK(switch_transform(BitSequence::from_string("1")).to_string() == "1");
}

TEST_CASE("longest_constant_run examples") {
  CHECK(longest_constant_run(BitSequence::from_string("0000")) == 4);
  CHECK(longest_constant_run(BitSequence::from_string("0110")) == 2);
  CHECK(longest_constant_run(BitSequence::from_string("1")) == 1);
}

TEST_CASE("tail_alternating examples") {
  CHECK(tail_alternating(BitSequence::from_string("00101"), 3));
  CHECK_FALSE(tail_alternating(BitSequence::from_string("0011"), 2));
  CHECK(tail_alternating(BitSequence::from_string("0011"), 1));
  CHECK_THROWS_AS(tail_alternating(BitSequence::from_string("01"), 3),
                  RangeError);
}

TEST_CASE("transform equivalence, exhaustive N <= 12") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      BitSequence x = seq_from_mask(mask, n);
      CHECK(longest_switch_run(x) ==
            longest_constant_run(switch_transform(x)) - 1);
    }
  }
}

TEST_CASE("parity convention is immaterial to M") {
  // Flipping odd positions vs even positions gives complementary Y, and
  // constant runs are complement-invariant.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BitSequence x = random_sequence(seed, 257);
    BitSequence y_odd = switch_transform(x);
    BitSequence y_even = complement(y_odd);
    CHECK(longest_constant_run(y_odd) == longest_constant_run(y_even));
    CHECK(longest_switch_run(x) == longest_constant_run(y_even) - 1);
  }
}

TEST_CASE("Z as the largest K with I(N,K) = K, exhaustive N <= 12") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      BitSequence x = seq_from_mask(mask, n);
      long z = 0;
      for (std::size_t k = 1; k <= n; ++k)
        if (window_max_sum(x, k) == long(k)) z = long(k);
      CHECK(longest_head_run(x) == z);
    }
  }
}

TEST_CASE("complement and reversal invariance, exhaustive N <= 12") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      BitSequence x = seq_from_mask(mask, n);
      CHECK(longest_switch_run(complement(x)) == longest_switch_run(x));
      BitSequence r = reversed(x);
      CHECK(longest_switch_run(r) == longest_switch_run(x));
      CHECK(longest_head_run(r) == longest_head_run(x));
    }
  }
}

TEST_CASE("prefix monotonicity and bounds") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    BitSequence x = random_sequence(seed, 400);
    long prev = 0;
    for (std::size_t n = 1; n <= x.size(); ++n) {
      long m = longest_switch_run(x, 1, n);
      CHECK(m >= prev);
      CHECK(m <= long(n) - 1);
      prev = m;
    }
    CHECK(longest_head_run(x) <= long(x.size()));
  }
}

TEST_CASE("switch total equals unequal adjacent pairs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    BitSequence x = random_sequence(seed, 199);
    long pairs = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      pairs += (x.at0(i) != x.at0(i - 1));
    CHECK(switch_counts(x, 1, x.size()).total == pairs);
    CHECK(total_switches(x) == pairs);
    auto c = switch_counts(x, 1, x.size());
    CHECK(std::abs(c.head_switches - c.tail_switches) <= 1);
  }
}

TEST_CASE("word scanners agree with per-bit scanners on long inputs") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    BitSequence x = random_sequence(seed, 100003);
    CHECK(longest_switch_run(x) == longest_switch_run_generic(x, 0, x.size()));
    CHECK(longest_head_run(x) == longest_head_run_generic(x));
    CHECK(longest_constant_run(x) == longest_constant_run_generic(x));
  }
}

TEST_CASE("StreamScanner matches whole-sequence scans") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    BitSequence x = random_sequence(seed, 4097);
    StreamScanner scan;
    for (std::size_t i = 0; i < x.size(); ++i) scan.push(x.at0(i));
    CHECK(scan.longest_switch_run() == longest_switch_run(x));
    CHECK(scan.longest_head_run() == longest_head_run(x));
    CHECK(scan.total_switches() == total_switches(x));
  }
}

TEST_CASE("transform equivalence on a large random sequence") {
  BitSequence x = random_sequence(0xFEEDu, 1000000);
  CHECK(longest_switch_run(x) ==
        longest_constant_run(switch_transform(x)) - 1);
}
