#pragma once

// Brute-force ground truth. Builds the literal bit block of d-bit words,
// scans its windows, and counts the pairs the formulas in patterncount.hpp
// predict. Also hosts the quadratic reference for the close-pair counter.

#include "champ_ppc/bigint.hpp"
#include "champ_ppc/champernowne.hpp"
#include "champ_ppc/paircorr.hpp"
#include "champ_ppc/patterncount.hpp"
#include "champ_ppc/shifts.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace champ_ppc {

inline constexpr unsigned kMaxBlockWordLength = 20;
inline constexpr unsigned kMaxPairCountWordLength = 16;
inline constexpr unsigned kMaxReportWordLength = 14;
inline constexpr std::size_t kMaxNaiveSample = 5000;

// The block c_0 c_1 ... c_{2^(d-1)-1} of d-bit words, MSB first, with
// `margin` true stream bits on each side.
struct BlockBits {
  unsigned d = 1;
  std::size_t margin = 0;
  std::vector<std::uint8_t> bits;  // margin + interior + margin

  std::size_t interior_size() const { return bits.size() - 2 * margin; }
  std::span<const std::uint8_t> interior() const {
    return std::span<const std::uint8_t>(bits).subspan(margin, interior_size());
  }
};

inline BlockBits build_block_bits(unsigned d, std::size_t margin) {
  if (d < 1 || d > kMaxBlockWordLength) throw std::invalid_argument("block word length must be in [1, 20]");
  const auto start = static_cast<std::uint64_t>(block_start(d).index());
  if (margin > start - 1) throw std::invalid_argument("margin exceeds the stream prefix before the block");
  const std::size_t interior = std::size_t{d} << (d - 1);
  BlockBits out;
  out.d = d;
  out.margin = margin;
  out.bits.reserve(interior + 2 * margin);
  DigitCursor cursor(StreamPosition(start - margin));
  for (std::size_t t = 0; t < interior + 2 * margin; ++t) {
    out.bits.push_back(static_cast<std::uint8_t>(cursor.next()));
  }
  return out;
}

enum class ScanScope { interior, with_context };

inline std::string_view to_string(ScanScope s) { return s == ScanScope::interior ? "interior" : "with_context"; }

inline ScanScope parse_scan_scope(std::string_view name) {
  if (name == "interior") return ScanScope::interior;
  if (name == "with_context") return ScanScope::with_context;
  throw std::invalid_argument("unknown scope '" + std::string(name) + "'");
}

// Windows of `width` bits anchored in the block, in anchor order. `interior`
// keeps windows lying entirely inside the block; `with_context` keeps every
// anchor inside the block and reads the tail from the following stream bits.
inline std::vector<std::uint64_t> scan_windows(const BlockBits& block, unsigned width, ScanScope scope) {
  if (width < 1 || width > 64) throw std::invalid_argument("window width must be in [1, 64]");
  const std::size_t interior = block.interior_size();
  std::size_t anchors = 0;
  if (scope == ScanScope::interior) {
    anchors = interior >= width ? interior - width + 1 : 0;
  } else {
    if (block.margin + 1 < width) throw std::invalid_argument("scope exceeds built margins");
    anchors = interior;
  }
  std::vector<std::uint64_t> out;
  out.reserve(anchors);
  const std::uint8_t* base = block.bits.data() + block.margin;
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  std::uint64_t acc = 0;
  for (unsigned t = 0; t + 1 < width && t < interior + block.margin; ++t) acc = (acc << 1) | base[t];
  for (std::size_t p = 0; p < anchors; ++p) {
    acc = ((acc << 1) | base[p + width - 1]) & mask;
    out.push_back(acc);
  }
  return out;
}

namespace detail {

// (value, multiplicity) runs of a window multiset.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> group_windows(std::vector<std::uint64_t> windows) {
  std::sort(windows.begin(), windows.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
  for (std::size_t i = 0; i < windows.size();) {
    std::size_t j = i;
    while (j < windows.size() && windows[j] == windows[i]) ++j;
    runs.emplace_back(windows[i], j - i);
    i = j;
  }
  return runs;
}

inline void check_pattern_params(unsigned d, unsigned e) {
  if (d > kMaxPairCountWordLength) throw std::invalid_argument("pair counting needs d <= 16");
  (void)BlockParams(d, e);
}

// Enough context for (d+e+1)-bit windows, capped by the stream prefix.
inline std::size_t default_margin(unsigned d, unsigned e) {
  const auto available = static_cast<std::size_t>(block_start(d).index()) - 1;
  return std::min<std::size_t>(d + e + 1, available);
}

inline void check_window_params(unsigned d, unsigned e) {
  if (d < 1 || d > kMaxPairCountWordLength) throw std::invalid_argument("pair counting needs 1 <= d <= 16");
  if (d + e > 64) throw std::invalid_argument("window width d + e exceeds 64");
}

}  // namespace detail

// a_i = a_{d+i} for i = 1..e
inline bool is_type1_window(std::uint64_t window, unsigned d, unsigned e) {
  const std::uint64_t low = (std::uint64_t{1} << e) - 1;
  return (window >> d) == (window & low);
}

// Ones in the middle block a_{e+1} .. a_d.
inline unsigned middle_ones(std::uint64_t window, unsigned d, unsigned e) {
  const std::uint64_t mid = (window >> e) & ((std::uint64_t{1} << (d - e)) - 1);
  return static_cast<unsigned>(__builtin_popcountll(mid));
}

// Ordered pairs of distinct anchors whose (d+e)-bit windows are equal.
inline std::uint64_t count_equal_window_pairs(const BlockBits& block, unsigned d, unsigned e, ScanScope scope) {
  detail::check_window_params(d, e);
  if (block.d != d) throw std::invalid_argument("block word length does not match d");
  std::uint64_t total = 0;
  for (const auto& [value, m] : detail::group_windows(scan_windows(block, d + e, scope))) total += m * (m - 1);
  return total;
}

inline std::uint64_t count_equal_window_pairs(unsigned d, unsigned e, ScanScope scope) {
  detail::check_window_params(d, e);
  return count_equal_window_pairs(build_block_bits(d, detail::default_margin(d, e)), d, e, scope);
}

// Multiplicity histogram of the observed type-1 patterns, optionally
// restricted to patterns with `only_k` ones in the middle block. Patterns that
// never occur are not enumerated, so multiplicity 0 is absent.
inline MatchHistogram oracle_match_histogram(const BlockBits& block, unsigned d, unsigned e, ScanScope scope,
                                             std::optional<unsigned> only_k = std::nullopt) {
  detail::check_pattern_params(d, e);
  if (block.d != d) throw std::invalid_argument("block word length does not match d");
  MatchHistogram hist;
  for (const auto& [value, m] : detail::group_windows(scan_windows(block, d + e, scope))) {
    if (!is_type1_window(value, d, e)) continue;
    if (only_k && middle_ones(value, d, e) != *only_k) continue;
    hist[static_cast<unsigned>(m)] += 1;
  }
  return hist;
}

inline MatchHistogram oracle_match_histogram(unsigned d, unsigned e, ScanScope scope,
                                             std::optional<unsigned> only_k = std::nullopt) {
  detail::check_pattern_params(d, e);
  return oracle_match_histogram(build_block_bits(d, detail::default_margin(d, e)), d, e, scope, only_k);
}

// Ordered pairs of anchors (p1, p2) where one (w+1)-bit window has the form
//   B = a_1 .. a_j 0 1 .. 1 | 1
// and the other
//   C = a_1 .. a_j 1 0 .. 0 | 0
// with the same j-bit prefix. Each matched (B, C) couple is counted in both
// orders.
inline std::uint64_t count_bc_pattern_pairs(const BlockBits& block, unsigned d, unsigned e, unsigned j,
                                            ScanScope scope) {
  if (d > 14) throw std::invalid_argument("B/C pattern counting needs d <= 14");
  (void)BlockParams(d, e);
  if (block.d != d) throw std::invalid_argument("block word length does not match d");
  const unsigned w = d + e;
  if (j < d || j > w - 1) throw std::invalid_argument("prefix length j must lie in [d, d + e - 1]");
  const unsigned tail = w + 1 - j;  // bits after the prefix
  const std::uint64_t tail_mask = (std::uint64_t{1} << tail) - 1;
  const std::uint64_t b_tail = (std::uint64_t{1} << (tail - 1)) - 1;  // 0 1..1 1
  const std::uint64_t c_tail = std::uint64_t{1} << (tail - 1);        // 1 0..0 0
  std::unordered_map<std::uint64_t, std::uint64_t> b_count;
  std::unordered_map<std::uint64_t, std::uint64_t> c_count;
  for (std::uint64_t v : scan_windows(block, w + 1, scope)) {
    const std::uint64_t t = v & tail_mask;
    if (t == b_tail) ++b_count[v >> tail];
    else if (t == c_tail) ++c_count[v >> tail];
  }
  std::uint64_t total = 0;
  for (const auto& [prefix, nb] : b_count) {
    if (auto it = c_count.find(prefix); it != c_count.end()) total += nb * it->second;
  }
  return 2 * total;
}

inline std::uint64_t count_bc_pattern_pairs(unsigned d, unsigned e, unsigned j, ScanScope scope) {
  if (d > 14) throw std::invalid_argument("B/C pattern counting needs d <= 14");
  return count_bc_pattern_pairs(build_block_bits(d, detail::default_margin(d, e)), d, e, j, scope);
}

struct NaiveCounts {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
};

// Quadratic double loop over ordered pairs evaluating
//   (D + 1) q T_hi <= p 2^w   and   (D - 1) q T_lo <= p 2^w
// directly for every pair.
inline NaiveCounts naive_close_pairs(const SequenceSample& sample, const Threshold& t) {
  const std::size_t n = sample.size();
  if (n > kMaxNaiveSample) throw std::invalid_argument("naive counter is limited to N <= 5000");
  if (n < 2) return {};
  const unsigned w = sample.width;
  check_guard(n, w, t);
  const PowerEnclosure scale = enclose_power(n, t.beta);
  const BigInt rhs = t.s.num << w;
  const BigInt q_hi = t.s.den * scale.hi;
  const BigInt q_lo = t.s.den * scale.lo;
  using u128 = unsigned __int128;
  const u128 modulus = u128{1} << w;
  // 128-bit path when every product fits, otherwise big integers.
  auto bits = [](const BigInt& x) -> std::size_t { return x == 0 ? 0 : boost::multiprecision::msb(x) + 1; };
  const bool narrow = bits(rhs) < 127 && bits(q_hi) + w + 1 < 127;
  NaiveCounts out;
  auto distance = [&](std::uint64_t a, std::uint64_t b) -> u128 {
    const u128 diff = a > b ? u128{a - b} : u128{b - a};
    return std::min(diff, modulus - diff);
  };
  if (narrow) {
    const auto r = static_cast<u128>(rhs);
    const auto qh = static_cast<u128>(q_hi);
    const auto ql = static_cast<u128>(q_lo);
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t m = 0; m < n; ++m) {
        if (l == m) continue;
        const u128 delta = distance(sample.values[l], sample.values[m]);
        if ((delta + 1) * qh <= r) ++out.lower;
        if (delta == 0 || (delta - 1) * ql <= r) ++out.upper;
      }
    }
    return out;
  }
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < n; ++m) {
      if (l == m) continue;
      const u128 delta128 = distance(sample.values[l], sample.values[m]);
      const BigInt delta = BigInt(static_cast<std::uint64_t>(delta128 >> 64)) << 64 |
                           BigInt(static_cast<std::uint64_t>(delta128));
      if ((delta + 1) * q_hi <= rhs) ++out.lower;
      if ((delta - 1) * q_lo <= rhs) ++out.upper;
    }
  }
  return out;
}

enum class Verdict { match, lower_bound_holds, deviation_logged };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::lower_bound_holds: return "lower-bound-holds";
    case Verdict::deviation_logged: return "deviation-logged";
  }
  return "unknown";
}

struct ReportRow {
  std::string name;
  BigInt formula_value;
  BigInt oracle_value;
  Verdict verdict = Verdict::match;
  std::string note;
};

struct OracleReport {
  BlockParams params;
  ScanScope scope = ScanScope::with_context;
  std::vector<ReportRow> rows;
  MatchHistogram histogram_observed;

  bool has_deviation() const {
    return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.verdict == Verdict::deviation_logged; });
  }
};

// Accepted band for oracle / main_pair_count. The formula ignores block edges
// and three-word overlaps, so exact equality is not expected.
inline constexpr double kMainRatioLow = 0.75;
inline constexpr double kMainRatioHigh = 1.5;

// Allowed absolute difference for the k = 1 tallies: occurrences whose
// neighbouring word falls outside the block.
inline BigInt edge_allowance(const BlockParams& p) { return BigInt(4) * p.d() * pow2(p.e()); }

inline OracleReport verify(unsigned d, unsigned e) {
  if (d > kMaxReportWordLength) throw std::invalid_argument("verification report needs d <= 14");
  const BlockParams p(d, e);
  const ScanScope scope = ScanScope::with_context;
  const BlockBits block = build_block_bits(d, detail::default_margin(d, e));
  OracleReport report{p, scope, {}, oracle_match_histogram(block, d, e, scope)};
  auto& rows = report.rows;

  const BigInt observed_pairs = count_equal_window_pairs(block, d, e, scope);
  const BigInt main = main_pair_count(p).value;
  {
    ReportRow row{"main_pair_count_vs_equal_windows", main, observed_pairs, Verdict::match, ""};
    const double ratio = static_cast<double>(observed_pairs) / static_cast<double>(main);
    row.note = "ratio " + to_decimal(observed_pairs, main, 6);
    if (ratio < kMainRatioLow || ratio > kMainRatioHigh) row.verdict = Verdict::deviation_logged;
    rows.push_back(row);
  }
  {
    const BigInt dom = dominant_term(p).value;
    rows.push_back({"dominant_term_vs_equal_windows", dom, observed_pairs,
                    observed_pairs >= dom ? Verdict::lower_bound_holds : Verdict::deviation_logged, ""});
  }
  {
    const BigInt reordered = main_pair_count_reordered(p).value;
    rows.push_back({"main_pair_count_reordered", main, reordered,
                    reordered == main ? Verdict::match : Verdict::deviation_logged, "summation order swapped"});
  }
  {
    const BigInt total = histogram_pair_total(predicted_match_histogram(p));
    rows.push_back({"predicted_histogram_pair_total", main, total,
                    total == main ? Verdict::match : Verdict::deviation_logged, ""});
  }
  {
    const BigInt type1_pairs = histogram_pair_total(report.histogram_observed);
    rows.push_back({"type1_pairs_vs_main_pair_count", main, type1_pairs,
                    Verdict::match, "ratio " + to_decimal(type1_pairs, main, 6)});
    const double ratio = static_cast<double>(type1_pairs) / static_cast<double>(main);
    if (ratio < kMainRatioLow || ratio > kMainRatioHigh) rows.back().verdict = Verdict::deviation_logged;
  }
  {
    const MatchHistogram predicted = predicted_match_histogram(p, 1u);
    const MatchHistogram observed = oracle_match_histogram(block, d, e, scope, 1u);
    const BigInt allowance = edge_allowance(p);
    for (unsigned m : {1u, 2u}) {
      const BigInt want = predicted.count(m) ? predicted.at(m) : BigInt(0);
      const BigInt got = observed.count(m) ? observed.at(m) : BigInt(0);
      const BigInt diff = want > got ? want - got : got - want;
      rows.push_back({"k1_tally_multiplicity_" + std::to_string(m), want, got,
                      diff <= allowance ? Verdict::match : Verdict::deviation_logged,
                      "allowance " + allowance.str()});
    }
  }
  {
    const FormulaValue sum = carry_chain_pair_count(p, FormulaForm::sum);
    const BigInt bound = pow2(d + 1);
    rows.push_back({"carry_chain_bound", sum.value, bound,
                    sum.value < bound ? Verdict::match : Verdict::deviation_logged,
                    sum.flagged ? "flagged: e < 2" : "sum form < 2^(d+1)"});
    const FormulaValue closed = carry_chain_pair_count(p, FormulaForm::closed);
    rows.push_back({"carry_chain_closed_vs_sum", closed.value, sum.value,
                    closed.value == sum.value ? Verdict::match : Verdict::deviation_logged,
                    sum.flagged ? "flagged: e < 2" : ""});
  }
  if (p.middle() >= 3) {
    const BigInt closed = all_ones_pair_count(p).value;
    BigInt hockey = 0;
    for (long long i = 3; i <= static_cast<long long>(p.middle()); ++i) hockey += binomial(i - 1, 2);
    rows.push_back({"all_ones_pair_count", closed, hockey, closed == hockey ? Verdict::match : Verdict::deviation_logged,
                    "sum of C(i-1, 2)"});
  }
  if (p.middle() >= 5) {
    const AppendixPairCount eq = appendix_pair_count(p, AppendixMode::j_eq_d);
    const BigInt bc = count_bc_pattern_pairs(block, d, e, d, scope);
    rows.push_back({"appendix_j_eq_d_oracle", eq.closed_form.value, bc,
                    bc >= eq.closed_form.value ? Verdict::lower_bound_holds : Verdict::deviation_logged,
                    "closed form vs B/C pairs"});
    rows.push_back({"appendix_j_eq_d_sum_vs_closed", eq.closed_form.value, eq.sum_form.value,
                    eq.sum_form.value >= eq.closed_form.value ? Verdict::lower_bound_holds : Verdict::deviation_logged,
                    ""});
  }
  if (e >= 2) {
    const AppendixPairCount gt = appendix_pair_count(p, AppendixMode::j_gt_d);
    BigInt bc = 0;
    for (unsigned j = d + 1; j <= d + e - 1; ++j) bc += count_bc_pattern_pairs(block, d, e, j, scope);
    rows.push_back({"appendix_j_gt_d_oracle", gt.closed_form.value, bc,
                    bc >= gt.closed_form.value ? Verdict::lower_bound_holds : Verdict::deviation_logged,
                    "closed form vs B/C pairs summed over j"});
    rows.push_back({"appendix_j_gt_d_sum_vs_closed", gt.closed_form.value, gt.sum_form.value,
                    gt.sum_form.value >= gt.closed_form.value ? Verdict::lower_bound_holds : Verdict::deviation_logged,
                    ""});
  }
  return report;
}

}  // namespace champ_ppc
