#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "switchrun/errors.hpp"

namespace switchrun {

/// Immutable finite 0/1 sequence. Positions are 1-based at the API boundary
/// (X_1,...,X_N); internally bits are packed into 64-bit words, LSB-first,
/// with 0-based indexing. Unused bits of the last word are kept zero so that
/// whole sequences compare with operator== on the word vectors.
class BitSequence {
 public:
  BitSequence() = default;

  static BitSequence from_bits(const std::vector<int>& bits) {
    BitSequence s;
    s.reserve_bits(bits.size());
    for (int b : bits) s.append_bit(b != 0);
    return s;
  }

  /// Strict '0'/'1' string, no whitespace. For tests and internal use;
  /// lenient file parsing lives in parse_bits().
  static BitSequence from_string(std::string_view text) {
    BitSequence s;
    s.reserve_bits(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw ParseError(0, "expected '0' or '1'");
      s.append_bit(c == '1');
    }
    if (s.empty()) throw EmptyInput();
    return s;
  }

  /// Adopt pre-packed words (LSB-first). Tail bits beyond n are cleared.
  static BitSequence from_words(std::vector<std::uint64_t> w, std::size_t n) {
    BitSequence s;
    s.words_ = std::move(w);
    s.words_.resize((n + 63) / 64);
    s.size_ = n;
    if (n & 63) s.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    return s;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// 1-based access, paper convention.
  int bit(std::size_t pos) const {
    if (pos < 1 || pos > size_) throw RangeError("bit position out of range");
    return at0(pos - 1);
  }

  /// 0-based access, no bounds check.
  int at0(std::size_t i) const {
    return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (at0(i)) out[i] = '1';
    return out;
  }

  bool operator==(const BitSequence& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }

  // Construction helpers. append_bit is only meant for builders; a finished
  // sequence is treated as immutable.
  void reserve_bits(std::size_t n) { words_.reserve((n + 63) / 64); }
  void append_bit(bool b) {
    if ((size_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= std::uint64_t{1} << (size_ & 63);
    ++size_;
  }
  void append_word(std::uint64_t w, unsigned nbits) {
    for (unsigned i = 0; i < nbits; ++i) append_bit((w >> i) & 1u);
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

enum class BitFormat { Ascii01, RawMsbFirst };

/// Parse a bit file. ascii01 accepts '0', '1' and whitespace; raw consumes
/// every bit of every byte, most significant bit first.
inline BitSequence parse_bits(std::string_view raw, BitFormat format) {
  BitSequence s;
  if (format == BitFormat::Ascii01) {
    s.reserve_bits(raw.size());
    for (std::size_t off = 0; off < raw.size(); ++off) {
      unsigned char c = static_cast<unsigned char>(raw[off]);
      if (c == '0' || c == '1') {
        s.append_bit(c == '1');
      } else if (!std::isspace(c)) {
        throw ParseError(off, std::string("illegal character '") +
                                  static_cast<char>(c) + "'");
      }
    }
  } else {
    s.reserve_bits(raw.size() * 8);
    for (unsigned char byte : std::string_view(raw))
      for (int k = 7; k >= 0; --k) s.append_bit((byte >> k) & 1u);
  }
  if (s.empty()) throw EmptyInput();
  return s;
}

inline BitSequence complement(const BitSequence& x) {
  BitSequence y;
  y.reserve_bits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.append_bit(!x.at0(i));
  return y;
}

inline BitSequence reversed(const BitSequence& x) {
  BitSequence y;
  y.reserve_bits(x.size());
  for (std::size_t i = x.size(); i-- > 0;) y.append_bit(x.at0(i));
  return y;
}

}  // namespace switchrun
