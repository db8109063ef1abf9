#pragma once

// Exact evaluation of the bit-pattern counting formulas for the block of
// d-bit words in the base-2 Champernowne stream, with patterns of width
// w = d + e that spill e bits into the following word.
//
// Notation used throughout: D = d - e is the length of the middle block
// a_{e+1} .. a_d, and k is its number of ones. Binomials outside their range
// are zero, so every sum is evaluated over its displayed index bounds.

#include "champ_ppc/bigint.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace champ_ppc {

class BlockParams {
 public:
  BlockParams(unsigned d, unsigned e) : d_(d), e_(e) {
    if (e < 1) throw std::invalid_argument("overlap e must be at least 1");
    if (d < e + 2) throw std::invalid_argument("word length d must be at least e + 2");
    if (d > 4096) throw std::invalid_argument("word length d is unreasonably large");
  }

  unsigned d() const { return d_; }
  unsigned e() const { return e_; }
  unsigned width() const { return d_ + e_; }
  unsigned middle() const { return d_ - e_; }

  friend bool operator==(const BlockParams&, const BlockParams&) = default;

 private:
  unsigned d_;
  unsigned e_;
};

enum class FormulaForm { sum, closed };

inline std::string_view to_string(FormulaForm f) { return f == FormulaForm::sum ? "sum" : "closed"; }

struct FormulaValue {
  std::string name;
  BlockParams params;
  std::optional<unsigned> j;
  FormulaForm form = FormulaForm::sum;
  BigInt value;
  // Set when the parameters sit outside the formula's intended domain (e = 1
  // for carry-chain and appendix formulas) and the value is reported as-is.
  bool flagged = false;
};

// multiplicity m -> number of patterns occurring exactly m times
using MatchHistogram = std::map<unsigned, BigInt>;

// Ordered pairs represented by a histogram: sum over m of m (m - 1) count(m).
inline BigInt histogram_pair_total(const MatchHistogram& hist) {
  BigInt total = 0;
  for (const auto& [m, count] : hist) total += BigInt(m) * (m > 0 ? m - 1 : 0) * count;
  return total;
}

// Ordered pairs of equal-window occurrences among type-1 patterns
// (a_i = a_{d+i}, i = 1..e):
//   2^e sum_{k=1}^{D-1} sum_{j=0}^{k-1} (k-j)^2 C(D-j-1, k-j)
inline FormulaValue main_pair_count(const BlockParams& p) {
  const long long D = p.middle();
  BigInt inner = 0;
  for (long long k = 1; k <= D - 1; ++k) {
    for (long long j = 0; j <= k - 1; ++j) inner += BigInt((k - j) * (k - j)) * binomial(D - j - 1, k - j);
  }
  return {"main_pair_count", p, std::nullopt, FormulaForm::sum, pow2(p.e()) * inner};
}

// Same count with the summation order swapped: sum_i i^2 C(M, i) = M(M+1) 2^(M-2)
// gives 2^e sum_{M=1}^{D-1} M (M+1) 2^(M-2).
inline FormulaValue main_pair_count_reordered(const BlockParams& p) {
  const unsigned D = p.middle();
  BigInt scaled = 0;  // 4 * sum, every term M (M+1) 2^M is a multiple of 4
  for (unsigned M = 1; M + 1 <= D; ++M) scaled += BigInt(M) * (M + 1) * pow2(M);
  return {"main_pair_count", p, std::nullopt, FormulaForm::closed, (pow2(p.e()) * scaled) >> 2};
}

// The j = 0, k = floor((D-1)/2) summand of main_pair_count.
inline FormulaValue dominant_term(const BlockParams& p) {
  const long long D = p.middle();
  const long long k = (D - 1) / 2;
  return {"dominant_term", p, std::nullopt, FormulaForm::closed,
          pow2(p.e()) * k * k * binomial(D - 1, k)};
}

// Predicted multiplicity histogram of type-1 patterns, aggregated over
// k = 1..D-1 (or a single k when `only_k` is given). For each k:
//   j = 0:       2^(e-1) C(D-1, k) patterns at k (a_1 = 0) and at k+1 (a_1 = 1)
//   j = 1..k:    2^(e-1) C(D-j-1, k-j) patterns at k-j (a_1 = 0) and at
//                k-j+1 (a_1 = 1)
// Multiplicity 0 is dropped.
inline MatchHistogram predicted_match_histogram(const BlockParams& p,
                                                std::optional<unsigned> only_k = std::nullopt) {
  const long long D = p.middle();
  const BigInt half = pow2(p.e() - 1);
  MatchHistogram hist;
  auto add = [&hist](long long m, const BigInt& count) {
    if (m <= 0 || count == 0) return;
    hist[static_cast<unsigned>(m)] += count;
  };
  for (long long k = 1; k <= D - 1; ++k) {
    if (only_k && *only_k != k) continue;
    const BigInt lead = half * binomial(D - 1, k);
    add(k, lead);
    add(k + 1, lead);
    for (long long j = 1; j <= k; ++j) {
      const BigInt run = half * binomial(D - j - 1, k - j);
      add(k - j, run);
      add(k - j + 1, run);
    }
  }
  return hist;
}

// Ordered pairs from patterns whose matching word ends in a run of ones, so
// that the increment to the next word carries.
//   sum form: 2 ( sum_{j0=1}^{e} sum_{j1=e+1}^{d-1} C(j1-e, 2) 2^(j0+d-j1-2)
//                + (C(D,2) + C(D+1,2)) sum_{j0=2}^{e} 2^(j0-2) + C(D,2) )
//   closed:   (2^e - 1) / 2^(e-1) (2^d - 2^e) - D 2^e
//           = (2^e - 1)(2^(D+1) - 2) - D 2^e
inline FormulaValue carry_chain_pair_count(const BlockParams& p, FormulaForm form) {
  const long long d = p.d();
  const long long e = p.e();
  const long long D = p.middle();
  BigInt value = 0;
  if (form == FormulaForm::sum) {
    BigInt chains = 0;
    for (long long j0 = 1; j0 <= e; ++j0) {
      for (long long j1 = e + 1; j1 <= d - 1; ++j1) {
        chains += binomial(j1 - e, 2) * pow2(static_cast<unsigned>(j0 + d - j1 - 2));
      }
    }
    BigInt lead_runs = 0;
    for (long long j0 = 2; j0 <= e; ++j0) lead_runs += pow2(static_cast<unsigned>(j0 - 2));
    value = 2 * (chains + (binomial(D, 2) + binomial(D + 1, 2)) * lead_runs + binomial(D, 2));
  } else {
    value = (pow2(p.e()) - 1) * (pow2(p.middle() + 1) - 2) - BigInt(D) * pow2(p.e());
  }
  FormulaValue out{"carry_chain_pair_count", p, std::nullopt, form, value};
  out.flagged = e < 2;
  return out;
}

// Pairs from all-ones prefixes: sum_{i=3}^{D} C(i-1, 2) = (D-2)(D-1)D / 6.
inline FormulaValue all_ones_pair_count(const BlockParams& p) {
  const long long D = p.middle();
  if (D < 3) throw std::invalid_argument("all-ones count needs d - e >= 3");
  BigInt product = BigInt(D - 2) * (D - 1) * D;
  return {"all_ones_pair_count", p, std::nullopt, FormulaForm::closed, product / 6};
}

enum class AppendixBranch { j_eq_d_one, j_eq_d_zero, j_gt_d_one, j_gt_d_zero };

inline std::string_view to_string(AppendixBranch b) {
  switch (b) {
    case AppendixBranch::j_eq_d_one: return "j_eq_d_one";
    case AppendixBranch::j_eq_d_zero: return "j_eq_d_zero";
    case AppendixBranch::j_gt_d_one: return "j_gt_d_one";
    case AppendixBranch::j_gt_d_zero: return "j_gt_d_zero";
  }
  return "unknown";
}

namespace detail {

// sum_{k=1}^{D-1} sum_{l=1}^{k} l C(D-l-2, k-l)
inline BigInt zero_branch_sum(long long D) {
  BigInt s = 0;
  for (long long k = 1; k <= D - 1; ++k) {
    for (long long l = 1; l <= k; ++l) s += BigInt(l) * binomial(D - l - 2, k - l);
  }
  return s;
}

}  // namespace detail

// Occurrence counts of B-type windows (prefix of length j, then 0 1..1) split
// by the first middle bit a_{e+1}.
inline FormulaValue appendix_match_count(const BlockParams& p, unsigned j, AppendixBranch branch) {
  const long long D = p.middle();
  const bool eq = branch == AppendixBranch::j_eq_d_one || branch == AppendixBranch::j_eq_d_zero;
  if (eq && j != p.d()) throw std::invalid_argument("branch requires j = d");
  if (!eq && (j <= p.d() || j > p.d() + p.e() - 1)) {
    throw std::invalid_argument("branch requires d < j <= d + e - 1");
  }
  BigInt value = 0;
  switch (branch) {
    case AppendixBranch::j_eq_d_one:
      // sum_{k=2}^{D-1} sum_{l=1}^{k-1} (k-l) C(D-l-1, k-l)
      for (long long k = 2; k <= D - 1; ++k) {
        for (long long l = 1; l <= k - 1; ++l) value += BigInt(k - l) * binomial(D - l - 1, k - l);
      }
      break;
    case AppendixBranch::j_eq_d_zero:
      value = detail::zero_branch_sum(D);
      break;
    case AppendixBranch::j_gt_d_one: {
      // 2^(j-d-1) sum_{k=2}^{D-1} sum_{l=1}^{k} ((k-l) + (k-l+1)) C(D-l-1, k-l)
      BigInt bracket = 0;
      for (long long k = 2; k <= D - 1; ++k) {
        for (long long l = 1; l <= k; ++l) bracket += BigInt(2 * (k - l) + 1) * binomial(D - l - 1, k - l);
      }
      value = pow2(j - p.d() - 1) * bracket;
      break;
    }
    case AppendixBranch::j_gt_d_zero:
      value = pow2(j - p.d()) * detail::zero_branch_sum(D);
      break;
  }
  FormulaValue out{"appendix_match_count." + std::string(to_string(branch)), p, j, FormulaForm::sum,
                   value};
  out.flagged = p.e() < 2;
  return out;
}

enum class AppendixMode { j_eq_d, j_gt_d };

inline std::string_view to_string(AppendixMode m) { return m == AppendixMode::j_eq_d ? "j_eq_d" : "j_gt_d"; }

struct AppendixPairCount {
  FormulaValue sum_form;
  FormulaValue closed_form;
};

// Ordered B/C pairs agreeing in their first j bits.
//   j = d:  sum 2 sum_{k=2}^{D-1} sum_{l=1}^{k-1} (l-1)(k-l) C(D-l-1, k-l)
//           closed 2^(D-1) (D - 5)
//   j > d:  sum over j = d+1 .. d+e-1 of
//             2^(j-d) sum_{k=2}^{D-1} sum_{l=1}^{k} ((l-1)(k-l) + (l-1)(k-l+1)) C(D-l-1, k-l)
//           closed 2^(-1-e) (2^e - 2)(2^(2+e) + 2^d d + 2^(1+e) d - 2^d e - 2^(1+e) e - 2^(2+d))
inline AppendixPairCount appendix_pair_count(const BlockParams& p, AppendixMode mode) {
  const long long D = p.middle();
  const long long d = p.d();
  const long long e = p.e();
  const std::string name = "appendix_pair_count." + std::string(to_string(mode));
  BigInt sum = 0;
  BigInt closed = 0;
  if (mode == AppendixMode::j_eq_d) {
    if (D < 5) throw std::invalid_argument("j = d pair count needs d - e >= 5");
    for (long long k = 2; k <= D - 1; ++k) {
      for (long long l = 1; l <= k - 1; ++l) sum += BigInt((l - 1) * (k - l)) * binomial(D - l - 1, k - l);
    }
    sum *= 2;
    closed = pow2(static_cast<unsigned>(D - 1)) * (D - 5);
  } else {
    BigInt bracket = 0;
    for (long long k = 2; k <= D - 1; ++k) {
      for (long long l = 1; l <= k; ++l) {
        bracket += BigInt((l - 1) * (k - l) + (l - 1) * (k - l + 1)) * binomial(D - l - 1, k - l);
      }
    }
    for (long long j = d + 1; j <= d + e - 1; ++j) sum += pow2(static_cast<unsigned>(j - d)) * bracket;
    const BigInt pe = pow2(p.e());
    const BigInt pd = pow2(p.d());
    const BigInt inner = 4 * pe + pd * d + 2 * pe * d - pd * e - 2 * pe * e - 4 * pd;
    const BigInt numerator = (pe - 2) * inner;
    const BigInt divisor = 2 * pe;
    if (numerator % divisor != 0) throw std::logic_error("j > d closed form is not integral");
    closed = numerator / divisor;
  }
  AppendixPairCount out{{name, p, std::nullopt, FormulaForm::sum, sum},
                        {name, p, std::nullopt, FormulaForm::closed, closed}};
  out.sum_form.flagged = out.closed_form.flagged = e < 2;
  return out;
}

}  // namespace champ_ppc
