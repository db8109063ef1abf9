#pragma once

// Digit stream of the Champernowne constant in base b: the concatenation of
// the base-b expansions of 1, 2, 3, ... . Stream positions are 1-based (digit 1
// is the first fractional digit); word ordinals and digit offsets are 0-based.

#include "champ_ppc/bigint.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace champ_ppc {

// Position of a digit in the fractional expansion, index >= 1.
class StreamPosition {
 public:
  explicit StreamPosition(BigInt index) : index_(std::move(index)) {
    if (index_ < 1) throw std::invalid_argument("stream positions start at 1");
  }
  explicit StreamPosition(std::uint64_t index) : StreamPosition(BigInt(index)) {}

  const BigInt& index() const { return index_; }

  friend bool operator==(const StreamPosition&, const StreamPosition&) = default;

 private:
  BigInt index_;
};

// Where a stream digit lives: word n of the block of d-digit words, digit r.
struct BlockLocation {
  unsigned word_length = 1;  // d
  BigInt word_ordinal = 0;   // n, 0 <= n < (b-1) b^(d-1)
  unsigned digit_offset = 0; // r, 0 <= r < d, from the most significant digit
  unsigned base = 2;

  friend bool operator==(const BlockLocation&, const BlockLocation&) = default;
};

// Run of `width` consecutive stream digits read as a base-b integer, earliest
// digit most significant.
struct BitWindow {
  unsigned width = 1;
  BigInt value = 0;
  unsigned base = 2;
};

namespace detail {

inline void check_base(unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
}

inline BigInt block_length(unsigned d, unsigned base) {
  return BigInt(d) * (base - 1) * ipow(BigInt(base), d - 1);
}

}  // namespace detail

// Number of digits in the block of d-digit words.
inline BigInt block_length(unsigned d, unsigned base = 2) {
  if (d < 1) throw std::invalid_argument("word length must be at least 1");
  detail::check_base(base);
  return detail::block_length(d, base);
}

// Stream position of the first digit of the first d-digit word.
inline StreamPosition block_start(unsigned d, unsigned base = 2) {
  if (d < 1) throw std::invalid_argument("word length must be at least 1");
  detail::check_base(base);
  BigInt pos = 1;
  for (unsigned k = 1; k < d; ++k) pos += detail::block_length(k, base);
  return StreamPosition(std::move(pos));
}

inline BlockLocation locate(const StreamPosition& pos, unsigned base = 2) {
  detail::check_base(base);
  const BigInt& i = pos.index();
  BlockLocation loc;
  loc.base = base;
  if (i <= std::numeric_limits<std::uint64_t>::max() && base < (1u << 20)) {
    using u128 = unsigned __int128;
    const u128 target = static_cast<std::uint64_t>(i);
    u128 start = 1;
    u128 power = 1;  // b^(d-1)
    for (unsigned d = 1;; ++d) {
      const u128 len = u128(d) * (base - 1) * power;
      if (target < start + len) {
        const u128 offset = target - start;
        loc.word_length = d;
        loc.word_ordinal = BigInt(static_cast<std::uint64_t>(offset / d));
        loc.digit_offset = static_cast<unsigned>(offset % d);
        return loc;
      }
      start += len;
      power *= base;
    }
  }
  BigInt start = 1;
  for (unsigned d = 1;; ++d) {
    BigInt len = detail::block_length(d, base);
    if (i < start + len) {
      BigInt offset = i - start;
      loc.word_length = d;
      loc.word_ordinal = offset / d;
      loc.digit_offset = static_cast<unsigned>(offset % d);
      return loc;
    }
    start += len;
  }
}

// The n-th d-digit word, b^(d-1) + n.
inline BigInt word_value(unsigned d, const BigInt& n, unsigned base = 2) {
  if (d < 1) throw std::invalid_argument("word length must be at least 1");
  detail::check_base(base);
  const BigInt lead = ipow(BigInt(base), d - 1);
  if (n < 0 || n >= lead * (base - 1)) throw std::out_of_range("word ordinal out of range");
  return lead + n;
}

inline unsigned digit_at(const StreamPosition& pos, unsigned base = 2) {
  const BlockLocation loc = locate(pos, base);
  const BigInt word = word_value(loc.word_length, loc.word_ordinal, base);
  const BigInt place = ipow(BigInt(base), loc.word_length - 1 - loc.digit_offset);
  return static_cast<unsigned>((word / place) % base);
}

// Sequential reader over the stream. Each next() is O(1) amortized; words are
// held in 64 bits, so the cursor covers every position whose word is below
// 2^64 (for base 2, positions up to roughly 2^69).
class DigitCursor {
 public:
  explicit DigitCursor(const StreamPosition& start, unsigned base = 2) : base_(base) {
    const BlockLocation loc = locate(start, base);
    const BigInt word = word_value(loc.word_length, loc.word_ordinal, base);
    const BigInt end = ipow(BigInt(base), loc.word_length);
    if (end > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("digit cursor: word exceeds 64 bits");
    }
    d_ = loc.word_length;
    word_ = static_cast<std::uint64_t>(word);
    word_end_ = static_cast<std::uint64_t>(end);
    offset_ = loc.digit_offset;
    place_ = static_cast<std::uint64_t>(ipow(BigInt(base), d_ - 1 - offset_));
  }

  unsigned next() {
    const auto digit = static_cast<unsigned>((word_ / place_) % base_);
    if (++offset_ < d_) {
      place_ /= base_;
    } else {
      advance_word();
    }
    return digit;
  }

  unsigned word_length() const { return d_; }

 private:
  void advance_word() {
    offset_ = 0;
    if (++word_ == word_end_) {
      const unsigned __int128 next_end = static_cast<unsigned __int128>(word_end_) * base_;
      if (next_end > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("digit cursor: word exceeds 64 bits");
      }
      ++d_;
      word_end_ = static_cast<std::uint64_t>(next_end);
    }
    place_ = word_end_ / base_;
  }

  unsigned base_;
  unsigned d_ = 1;
  std::uint64_t word_ = 1;
  std::uint64_t word_end_ = 2;
  unsigned offset_ = 0;
  std::uint64_t place_ = 1;
};

inline BitWindow window(const StreamPosition& start, unsigned width, unsigned base = 2) {
  if (width < 1) throw std::invalid_argument("window width must be at least 1");
  detail::check_base(base);
  DigitCursor cursor(start, base);
  BitWindow out{width, 0, base};
  for (unsigned t = 0; t < width; ++t) {
    out.value *= base;
    out.value += cursor.next();
  }
  return out;
}

}  // namespace champ_ppc
