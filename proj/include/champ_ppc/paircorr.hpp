#pragma once

// Exact close-pair counting on the circle R/Z for w-bit truncated samples.
//
// A pair (l, m) of truncated values X_l, X_m with circular distance
// D = min(|X_l - X_m|, 2^w - |X_l - X_m|) has true distance in
// ((D - 1) / 2^w, (D + 1) / 2^w). Against the threshold s / N^beta with
// s = p/q this yields two integer tests:
//
//   certainly within:  (D + 1) * q * T_hi <= p * 2^w
//   possibly within:   (D - 1) * q * T_lo <= p * 2^w
//
// where T_lo <= N^beta <= T_hi are integer enclosures. Both reduce to
// "D <= L" for a single integer cutoff L, so each count is one sort plus a
// linear two-pointer sweep.

#include "champ_ppc/bigint.hpp"
#include "champ_ppc/shifts.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace champ_ppc {

struct Threshold {
  Ratio s = Ratio::integer(1);
  Ratio beta = Ratio::integer(1);
};

struct PairCountResult {
  std::uint64_t N = 0;
  Ratio s;
  Ratio beta;
  std::uint64_t count_lower = 0;
  std::uint64_t count_upper = 0;
  Ratio normalized_lower;  // count_lower / ceil(N^(2 - beta))
  Ratio normalized_upper;  // count_upper / floor(N^(2 - beta))
};

// Integer enclosure lo <= N^(u/v) <= hi.
struct PowerEnclosure {
  BigInt lo;
  BigInt hi;
};

inline PowerEnclosure enclose_power(std::uint64_t n, const Ratio& exponent) {
  if (exponent.den > 64 || exponent.num > 128) {
    throw std::invalid_argument("exponent numerator/denominator too large");
  }
  const auto u = static_cast<unsigned>(exponent.num);
  const auto v = static_cast<unsigned>(exponent.den);
  const BigInt base = ipow(BigInt(n), u);
  return {iroot_floor(base, v), iroot_ceil(base, v)};
}

namespace detail {

inline void check_beta(const Ratio& beta) {
  if (beta.num == 0 || beta.den < beta.num) throw std::invalid_argument("beta must lie in (0, 1]");
}

// Unordered pairs i < j in a sorted array with v[j] - v[i] <= gap.
inline std::uint64_t pairs_within_linear(std::span<const std::uint64_t> sorted, std::uint64_t gap) {
  std::uint64_t total = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < sorted.size(); ++hi) {
    while (sorted[hi] - sorted[lo] > gap) ++lo;
    total += hi - lo;
  }
  return total;
}

}  // namespace detail

// Ordered pairs (l, m), l != m, with circular distance <= cutoff on Z / 2^w.
// A negative cutoff yields 0.
inline std::uint64_t count_circular_within(std::span<const std::uint64_t> sorted, unsigned w,
                                           const BigInt& cutoff) {
  const std::uint64_t n = sorted.size();
  if (n < 2 || cutoff < 0) return 0;
  const std::uint64_t all = n * (n - 1);
  const BigInt half = pow2(w - 1);  // largest possible circular distance
  if (cutoff >= half) return all;
  const auto gap = static_cast<std::uint64_t>(cutoff);
  const std::uint64_t mask = detail::width_mask(w);
  // Linear differences in [2^w - gap, 2^w) wrap around to distance <= gap.
  const std::uint64_t near = detail::pairs_within_linear(sorted, gap);
  const std::uint64_t below_wrap = detail::pairs_within_linear(sorted, mask - gap);
  return 2 * (near + all / 2 - below_wrap);
}

// Integer cutoffs for the lower and upper counts.
struct DistanceCutoffs {
  BigInt lower;
  BigInt upper;
};

inline DistanceCutoffs distance_cutoffs(std::uint64_t n, unsigned w, const Threshold& t) {
  detail::check_beta(t.beta);
  const PowerEnclosure scale = enclose_power(n, t.beta);
  const BigInt rhs = t.s.num << w;
  // (D + 1) q T_hi <= rhs  <=>  D <= floor(rhs / (q T_hi)) - 1
  // (D - 1) q T_lo <= rhs  <=>  D <= floor(rhs / (q T_lo)) + 1
  return {rhs / (t.s.den * scale.hi) - 1, rhs / (t.s.den * scale.lo) + 1};
}

inline void check_guard(std::uint64_t n, unsigned w, const Threshold& t) {
  detail::check_width(w);
  if (pow2(w) <= 4 * t.s.den * n) {
    throw std::invalid_argument("width too small: need 2^w > 4 q N");
  }
}

namespace detail {

inline PairCountResult count_sorted(std::span<const std::uint64_t> sorted, unsigned w,
                                    const Threshold& t) {
  const std::uint64_t n = sorted.size();
  if (n < 1) throw std::invalid_argument("sample is empty");
  check_beta(t.beta);
  check_guard(n, w, t);
  const DistanceCutoffs cut = distance_cutoffs(n, w, t);
  PairCountResult r;
  r.N = n;
  r.s = t.s;
  r.beta = t.beta;
  r.count_lower = count_circular_within(sorted, w, cut.lower);
  r.count_upper = count_circular_within(sorted, w, cut.upper);
  const Ratio two_minus_beta(2 * t.beta.den - t.beta.num, t.beta.den);
  const PowerEnclosure norm = enclose_power(n, two_minus_beta);
  r.normalized_lower = Ratio(r.count_lower, norm.hi);
  r.normalized_upper = Ratio(r.count_upper, norm.lo);
  return r;
}

inline std::vector<std::uint64_t> sorted_copy(const SequenceSample& sample) {
  std::vector<std::uint64_t> v = sample.values;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

inline PairCountResult count_close_pairs(const SequenceSample& sample, const Threshold& t) {
  return detail::count_sorted(detail::sorted_copy(sample), sample.width, t);
}

// F_N(s) = #{l != m : ||x_l - x_m|| <= s / N} / N
inline PairCountResult ppc_statistic(const SequenceSample& sample, const Ratio& s) {
  return count_close_pairs(sample, {s, Ratio::integer(1)});
}

inline PairCountResult weak_ppc_statistic(const SequenceSample& sample, const Ratio& s,
                                          const Ratio& beta) {
  if (!(beta.num > 0 && beta.num < beta.den)) {
    throw std::invalid_argument("weak statistic needs 0 < beta < 1");
  }
  return count_close_pairs(sample, {s, beta});
}

inline std::vector<PairCountResult> ppc_curve(const SequenceSample& sample,
                                              std::span<const Ratio> grid) {
  if (grid.empty()) throw std::invalid_argument("s grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw std::invalid_argument("s grid must be strictly ascending");
  }
  const std::vector<std::uint64_t> sorted = detail::sorted_copy(sample);
  std::vector<PairCountResult> out;
  out.reserve(grid.size());
  for (const Ratio& s : grid) {
    out.push_back(detail::count_sorted(sorted, sample.width, {s, Ratio::integer(1)}));
  }
  return out;
}

}  // namespace champ_ppc
