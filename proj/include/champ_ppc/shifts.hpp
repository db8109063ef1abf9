#pragma once

// The sequence x_n = {2^n alpha} for the base-2 Champernowne constant, held as
// w-bit truncations, plus the reference sequences used to calibrate the
// pair-correlation statistic. Every value X stands for the interval
// [X / 2^w, (X + 1) / 2^w) containing the true point.

#include "champ_ppc/bigint.hpp"
#include "champ_ppc/champernowne.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace champ_ppc {

inline constexpr unsigned kMaxWidth = 64;

enum class SequenceKind { champernowne, uniform, kronecker, sqrt_n };

inline std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::champernowne: return "champernowne";
    case SequenceKind::uniform: return "uniform";
    case SequenceKind::kronecker: return "kronecker";
    case SequenceKind::sqrt_n: return "sqrt_n";
  }
  return "unknown";
}

inline SequenceKind parse_sequence_kind(std::string_view name) {
  if (name == "champernowne") return SequenceKind::champernowne;
  if (name == "uniform") return SequenceKind::uniform;
  if (name == "kronecker") return SequenceKind::kronecker;
  if (name == "sqrt_n") return SequenceKind::sqrt_n;
  throw std::invalid_argument("unknown sequence kind '" + std::string(name) + "'");
}

struct ShiftPoint {
  std::uint64_t n = 0;
  std::uint64_t numerator = 0;
  unsigned width = 1;
};

struct SequenceSample {
  SequenceKind kind = SequenceKind::champernowne;
  unsigned width = 1;
  std::vector<std::uint64_t> values;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> parameter;

  std::size_t size() const { return values.size(); }
};

namespace detail {

inline void check_width(unsigned w) {
  if (w < 1 || w > kMaxWidth) throw std::invalid_argument("width must be in [1, 64]");
}

inline std::uint64_t width_mask(unsigned w) {
  return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
}

}  // namespace detail

// x_n truncated to w bits: the window of digits n+1 .. n+w.
inline ShiftPoint shift_point(std::uint64_t n, unsigned w) {
  detail::check_width(w);
  const BitWindow win = window(StreamPosition(BigInt(n) + 1), w);
  return {n, static_cast<std::uint64_t>(win.value), w};
}

// values[t] = x_{t+1}, built in one sliding pass over digits 2 .. N+w.
inline SequenceSample champernowne_sequence(std::size_t count, unsigned w) {
  if (count < 1) throw std::invalid_argument("sequence length must be at least 1");
  detail::check_width(w);
  SequenceSample out;
  out.kind = SequenceKind::champernowne;
  out.width = w;
  out.values.reserve(count);
  const std::uint64_t mask = detail::width_mask(w);
  DigitCursor cursor(StreamPosition(std::uint64_t{2}));
  std::uint64_t acc = 0;
  for (unsigned t = 0; t + 1 < w; ++t) acc = (acc << 1) | cursor.next();
  for (std::size_t t = 0; t < count; ++t) {
    acc = ((acc << 1) | cursor.next()) & mask;
    out.values.push_back(acc);
  }
  return out;
}

// N independent w-bit values: the top w bits of successive mt19937_64 outputs.
inline SequenceSample uniform_sequence(std::size_t count, unsigned w, std::uint64_t seed) {
  detail::check_width(w);
  SequenceSample out;
  out.kind = SequenceKind::uniform;
  out.width = w;
  out.seed = seed;
  out.values.reserve(count);
  std::mt19937_64 gen(seed);
  for (std::size_t t = 0; t < count; ++t) out.values.push_back(gen() >> (64 - w));
  return out;
}

// floor(2^w (sqrt(5) - 1) / 2), the golden rotation at w bits.
inline std::uint64_t golden_kronecker_step(unsigned w) {
  detail::check_width(w);
  const BigInt scaled_sqrt5 = isqrt(BigInt(5) << (2 * w));
  return static_cast<std::uint64_t>((scaled_sqrt5 - pow2(w)) >> 1);
}

// X_n = n * A mod 2^w for n = 1 .. N.
inline SequenceSample kronecker_sequence(std::size_t count, unsigned w, std::uint64_t step) {
  detail::check_width(w);
  const std::uint64_t mask = detail::width_mask(w);
  if (step > mask) throw std::invalid_argument("kronecker step must be a w-bit numerator");
  SequenceSample out;
  out.kind = SequenceKind::kronecker;
  out.width = w;
  out.parameter = step;
  out.values.reserve(count);
  std::uint64_t acc = 0;
  for (std::size_t t = 0; t < count; ++t) {
    acc = (acc + step) & mask;
    out.values.push_back(acc);
  }
  return out;
}

// floor(2^w sqrt(n)) mod 2^w.
inline std::uint64_t sqrt_fraction(std::uint64_t n, unsigned w) {
  detail::check_width(w);
  const BigInt root = isqrt(BigInt(n) << (2 * w));
  return static_cast<std::uint64_t>(root & BigInt(detail::width_mask(w)));
}

inline bool is_perfect_square(std::uint64_t n) {
  const auto r = static_cast<std::uint64_t>(isqrt(BigInt(n)));
  return r * r == n;
}

// {sqrt(n)} over the non-square integers n = 2, 3, 5, 6, 7, 8, 10, ...
// Perfect squares all land on 0 and would add about one to the normalized
// pair count, so they are skipped.
inline SequenceSample sqrt_sequence(std::size_t count, unsigned w) {
  detail::check_width(w);
  SequenceSample out;
  out.kind = SequenceKind::sqrt_n;
  out.width = w;
  out.values.reserve(count);
  for (std::uint64_t n = 1; out.values.size() < count; ++n) {
    if (is_perfect_square(n)) continue;
    out.values.push_back(sqrt_fraction(n, w));
  }
  return out;
}

inline SequenceSample reference_sequence(SequenceKind kind, std::size_t count, unsigned w,
                                         std::optional<std::uint64_t> seed = std::nullopt,
                                         std::optional<std::uint64_t> parameter = std::nullopt) {
  switch (kind) {
    case SequenceKind::champernowne:
      return champernowne_sequence(count, w);
    case SequenceKind::uniform:
      if (!seed) throw std::invalid_argument("uniform sequence needs a seed");
      return uniform_sequence(count, w, *seed);
    case SequenceKind::kronecker:
      if (!parameter) throw std::invalid_argument("kronecker sequence needs a step parameter");
      return kronecker_sequence(count, w, *parameter);
    case SequenceKind::sqrt_n:
      return sqrt_sequence(count, w);
  }
  throw std::invalid_argument("unknown sequence kind");
}

}  // namespace champ_ppc
