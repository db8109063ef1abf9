// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include "champ_ppc/champernowne.hpp"
#include "champ_ppc/oracle.hpp"
#include "champ_ppc/paircorr.hpp"
#include "champ_ppc/patterncount.hpp"
#include "champ_ppc/shifts.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace champ_ppc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s) {
    out.pass = false;
    out.detail << " [runtime " << elapsed << " s >= " << time_limit_s << " s]";
  }
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << title << "  ("
            << std::fixed << std::setprecision(2) << elapsed << " s)" << out.detail.str() << std::endl;
}

double as_double(const Ratio& r) { return r.to_double(); }

void digit_fidelity(Outcome& out) {
  std::string head;
  for (std::uint64_t i = 1; i <= 16; ++i) head.push_back(static_cast<char>('0' + digit_at(StreamPosition(i))));
  out.require(head == "1101110010111011", "first 16 digits " + head);
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1000000000);
  int mismatches = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const std::uint64_t i = pick(gen);
    const BlockLocation loc = locate(StreamPosition(i));
    const auto word = static_cast<std::uint64_t>(word_value(loc.word_length, loc.word_ordinal));
    const unsigned bit = static_cast<unsigned>((word >> (loc.word_length - 1 - loc.digit_offset)) & 1);
    // independent check of the location through the base-2 closed form
    const unsigned d = loc.word_length;
    const std::uint64_t start = d >= 2 ? std::uint64_t(d - 2) * (std::uint64_t{1} << (d - 1)) + 2 : 1;
    const bool placed = i - start == static_cast<std::uint64_t>(loc.word_ordinal) * d + loc.digit_offset;
    if (!placed || digit_at(StreamPosition(i)) != bit) ++mismatches;
  }
  out.detail << " random mismatches=" << mismatches;
  out.require(mismatches == 0, "random positions");
}

void geometry(Outcome& out) {
  for (unsigned d = 1; d <= 30; ++d) {
    const BigInt gap = block_start(d + 1).index() - block_start(d).index();
    out.require(gap == BigInt(d) * pow2(d - 1), "d=" + std::to_string(d));
  }
}

void statistic_correctness(Outcome& out) {
  std::mt19937_64 gen(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned w = 24 + static_cast<unsigned>(gen() % 17);
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    SequenceSample sample;
    sample.kind = SequenceKind::uniform;
    sample.width = w;
    const std::uint64_t spread = mask >> (4 + gen() % 8);
    const std::uint64_t center = gen() & mask;
    for (int t = 0; t < 2000; ++t) {
      // half clustered, half uniform
      sample.values.push_back(t % 2 ? (center + gen() % spread) & mask : gen() & mask);
    }
    const Threshold thr{Ratio(1 + gen() % 30, 1 + gen() % 10), Ratio::integer(1)};
    const PairCountResult fast = count_close_pairs(sample, thr);
    const NaiveCounts slow = naive_close_pairs(sample, thr);
    if (fast.count_lower != slow.lower || fast.count_upper != slow.upper) ++mismatches;
  }
  out.detail << " mismatches=" << mismatches << "/100";
  out.require(mismatches == 0, "two-pointer vs naive");
}

void poissonian_baseline(Outcome& out) {
  const std::size_t n = 100000;
  const unsigned w = 48;
  const std::vector<Ratio> grid = {Ratio(1, 2), Ratio::integer(1), Ratio::integer(2)};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto curve = ppc_curve(uniform_sequence(n, w, seed), grid);
    for (const auto& r : curve) {
      const double s = as_double(r.s);
      const double tol = 5 * std::sqrt(2 * s / n);
      const double lo = as_double(r.normalized_lower);
      const double hi = as_double(r.normalized_upper);
      out.require(std::abs(lo - 2 * s) <= tol && std::abs(hi - 2 * s) <= tol,
                  "uniform seed " + std::to_string(seed) + " s=" + r.s.str());
    }
  }
  const PairCountResult sq = ppc_statistic(sqrt_sequence(n, w), Ratio::integer(1));
  out.detail << " sqrt_n F(1)=" << to_decimal(sq.normalized_lower, 5);
  out.require(as_double(sq.normalized_lower) >= 1.9 && as_double(sq.normalized_upper) <= 2.1, "sqrt_n");
}

void non_poissonian_baseline(Outcome& out) {
  const unsigned w = 48;
  const Ratio s(3, 10);
  const SequenceSample small = kronecker_sequence(1000, w, golden_kronecker_step(w));
  const NaiveCounts pin = naive_close_pairs(small, {s, Ratio::integer(1)});
  out.require(pin.upper == 0, "naive pin at N=1000");
  const PairCountResult r = ppc_statistic(kronecker_sequence(10000, w, golden_kronecker_step(w)), s);
  out.detail << " upper=" << r.count_upper;
  out.require(r.count_upper == 0, "upper count at N=10^4");
}

void theorem_signature(Outcome& out) {
  const unsigned w = 64;
  const PairCountResult small = ppc_statistic(champernowne_sequence(std::uint64_t{1} << 11, w), Ratio::integer(1));
  const PairCountResult large = ppc_statistic(champernowne_sequence(std::uint64_t{1} << 20, w), Ratio::integer(1));
  out.detail << " F(2048)=[" << to_decimal(small.normalized_lower, 6) << "," << to_decimal(small.normalized_upper, 6)
             << "] F(2^20)=[" << to_decimal(large.normalized_lower, 6) << ","
             << to_decimal(large.normalized_upper, 6) << "]";
  out.require(Ratio::integer(2) < small.normalized_lower, "F(2048) > 2");
  out.require(small.normalized_upper < large.normalized_lower, "F(2^20) > F(2048)");
  out.require(small.count_lower == 5360 && small.count_upper == 5360, "pinned count at N=2048");
  out.require(large.count_lower == 5373290 && large.count_upper == 5373290, "pinned count at N=2^20");
}

void formula_identities(Outcome& out) {
  for (unsigned e = 1; e <= 6; ++e) {
    for (unsigned d = e + 2; d <= 40; ++d) {
      const BlockParams p(d, e);
      const BigInt main = main_pair_count(p).value;
      out.require(main == main_pair_count_reordered(p).value, "reordered main " + std::to_string(d));
      out.require(main == histogram_pair_total(predicted_match_histogram(p)), "histogram " + std::to_string(d));
    }
  }
  for (unsigned D = 3; D <= 64; ++D) {
    out.require(all_ones_pair_count(BlockParams(D + 1, 1)).value == binomial(D, 3), "all ones");
  }
  for (unsigned e = 2; e <= 8; ++e) {
    for (unsigned d = e + 2; d <= 24; ++d) {
      out.require(carry_chain_pair_count(BlockParams(d, e), FormulaForm::sum).value < pow2(d + 1), "carry bound");
    }
  }
  for (unsigned e = 1; e <= 6; ++e) {
    for (unsigned d = e + 6; d <= 40; ++d) {
      const BlockParams p(d, e);
      const auto eq = appendix_pair_count(p, AppendixMode::j_eq_d);
      const auto gt = appendix_pair_count(p, AppendixMode::j_gt_d);
      out.require(eq.sum_form.value >= eq.closed_form.value, "eq. (2) sum >= closed");
      out.require(gt.sum_form.value >= gt.closed_form.value, "eq. (3) sum >= closed");
    }
  }
}

void formula_vs_oracle(Outcome& out) {
  for (const auto& [d, e] : std::vector<std::pair<unsigned, unsigned>>{{8, 2}, {10, 2}, {12, 3}, {14, 3}}) {
    const BlockParams p(d, e);
    const BlockBits block = build_block_bits(d, d + e + 1);
    const BigInt observed = count_equal_window_pairs(block, d, e, ScanScope::with_context);
    const BigInt main = main_pair_count(p).value;
    const double ratio = static_cast<double>(observed) / static_cast<double>(main);
    out.detail << " (" << d << "," << e << ") ratio=" << std::setprecision(4) << ratio;
    const std::string tag = "(" + std::to_string(d) + "," + std::to_string(e) + ")";
    out.require(observed >= dominant_term(p).value, tag + " dominant term");
    out.require(ratio >= kMainRatioLow && ratio <= kMainRatioHigh, tag + " ratio band");
    const MatchHistogram predicted = predicted_match_histogram(p, 1u);
    const MatchHistogram seen = oracle_match_histogram(block, d, e, ScanScope::with_context, 1u);
    const BigInt want = predicted.at(2);
    const BigInt got = seen.count(2) ? seen.at(2) : BigInt(0);
    const BigInt diff = want > got ? want - got : got - want;
    out.require(diff <= edge_allowance(p), tag + " k=1 two-occurrence tally");
  }
}

void appendix_oracle(Outcome& out) {
  const unsigned d = 12, e = 3;
  const BlockParams p(d, e);
  const BlockBits block = build_block_bits(d, d + e + 1);
  const std::uint64_t eq = count_bc_pattern_pairs(block, d, e, d, ScanScope::with_context);
  std::uint64_t gt = 0;
  for (unsigned j = d + 1; j <= d + e - 1; ++j) gt += count_bc_pattern_pairs(block, d, e, j, ScanScope::with_context);
  const BigInt eq_closed = appendix_pair_count(p, AppendixMode::j_eq_d).closed_form.value;
  const BigInt gt_closed = appendix_pair_count(p, AppendixMode::j_gt_d).closed_form.value;
  out.detail << " j=d pairs=" << eq << " (closed " << eq_closed << "), j>d pairs=" << gt << " (closed " << gt_closed
             << ")";
  out.require(eq_closed == 1024, "closed form 1024");
  out.require(BigInt(eq) >= eq_closed, "j = d");
  out.require(BigInt(gt) >= gt_closed, "j > d");
  out.require(eq == 1046 && gt == 7750, "pinned oracle counts");
}

void weak_ppc(Outcome& out) {
  const PairCountResult u = weak_ppc_statistic(uniform_sequence(100000, 48, 1), Ratio::integer(1), Ratio(1, 2));
  out.detail << " uniform F=[" << to_decimal(u.normalized_lower, 5) << "," << to_decimal(u.normalized_upper, 5) << "]";
  out.require(std::abs(as_double(u.normalized_lower) - 2) <= 0.1, "uniform lower");
  out.require(std::abs(as_double(u.normalized_upper) - 2) <= 0.1, "uniform upper");
  const SequenceSample champ = champernowne_sequence(2048, 64);
  for (const Ratio& beta : {Ratio(1, 4), Ratio(1, 2), Ratio(3, 4)}) {
    const PairCountResult a = weak_ppc_statistic(champ, Ratio::integer(1), beta);
    const PairCountResult b = weak_ppc_statistic(champernowne_sequence(2048, 64), Ratio::integer(1), beta);
    out.detail << " champ beta=" << beta.str() << " F=[" << to_decimal(a.normalized_lower, 4) << ","
               << to_decimal(a.normalized_upper, 4) << "]";
    out.require(a.count_lower == b.count_lower && a.count_upper == b.count_upper, "determinism");
  }
}

}  // namespace

int main() {
  criterion(1, "digit fidelity", 1.0, digit_fidelity);
  criterion(2, "block geometry", 0, geometry);
  criterion(3, "two-pointer equals naive counter", 10.0, statistic_correctness);
  criterion(4, "Poissonian baselines", 10.0, poissonian_baseline);
  criterion(5, "golden Kronecker has no close pairs", 0, non_poissonian_baseline);
  criterion(6, "finite signature F(2^20) > F(2048) > 2", 60.0, theorem_signature);
  criterion(7, "exact formula identities", 0, formula_identities);
  criterion(8, "formulas vs block oracle", 120.0, formula_vs_oracle);
  criterion(9, "appendix B/C oracle", 0, appendix_oracle);
  criterion(10, "weak pair correlations", 0, weak_ppc);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
