// champ-ppc: command-line front end for the Champernowne pair-correlation lab.

#include "champ_ppc/bigint.hpp"
#include "champ_ppc/champernowne.hpp"
#include "champ_ppc/oracle.hpp"
#include "champ_ppc/paircorr.hpp"
#include "champ_ppc/patterncount.hpp"
#include "champ_ppc/report.hpp"
#include "champ_ppc/shifts.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace champ_ppc;

constexpr int kExitUsage = 1;
constexpr int kExitDeviation = 2;
constexpr unsigned kWidthGuardBits = 8;

struct SampleOptions {
  std::string kind = "champernowne";
  std::uint64_t n = 2048;
  unsigned w = 64;
  std::optional<std::uint64_t> seed;
  std::string param;
};

struct RunConfig {
  std::string format = "csv";
  std::string out_path;
  SampleOptions sample;
  std::string s = "1";
  std::string beta;
  std::string grid = "1/2,1,2";
  std::string start = "1";
  std::uint64_t len = 16;
  unsigned base = 2;
  std::string d_range = "8";
  std::string e_range = "2";
  std::string scope = "with_context";
  bool strict = false;
  std::string bits_out;
  unsigned theorem_e = 3;
};

// w >= ceil(log2 N) + 8
void enforce_width_rule(std::uint64_t n, unsigned w) {
  if (w < kWidthGuardBits + 1 || w > kMaxWidth) throw std::invalid_argument("--w must be in [9, 64]");
  if (w - kWidthGuardBits < 64 && (std::uint64_t{1} << (w - kWidthGuardBits)) < n) {
    throw std::invalid_argument("--w too small for --N: need w >= log2(N) + 8");
  }
}

SequenceSample make_sample(const SampleOptions& opt) {
  if (opt.n < 1) throw std::invalid_argument("--N must be at least 1");
  enforce_width_rule(opt.n, opt.w);
  const SequenceKind kind = parse_sequence_kind(opt.kind);
  std::optional<std::uint64_t> parameter;
  if (kind == SequenceKind::kronecker) {
    if (opt.param.empty() || opt.param == "golden") {
      parameter = golden_kronecker_step(opt.w);
    } else {
      parameter = std::stoull(opt.param);
    }
  }
  return reference_sequence(kind, opt.n, opt.w, opt.seed, parameter);
}

std::vector<Ratio> parse_grid(const std::string& text) {
  std::vector<Ratio> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_ratio(item));
  return grid;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  if (auto colon = text.find(':'); colon != std::string::npos) {
    const auto lo = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
    const auto hi = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
    if (hi < lo) throw std::invalid_argument("empty range '" + text + "'");
    return {lo, hi};
  }
  const auto v = static_cast<unsigned>(std::stoul(text));
  return {v, v};
}

Json sample_json(const SequenceSample& s) {
  Json j{{"kind", std::string(to_string(s.kind))}, {"N", std::to_string(s.size())}, {"w", s.width}};
  if (s.seed) j["seed"] = std::to_string(*s.seed);
  if (s.parameter) j["parameter"] = std::to_string(*s.parameter);
  return j;
}

void emit_pair_counts(std::ostream& out, const RunConfig& cfg, const SequenceSample& sample,
                      const std::vector<PairCountResult>& rows) {
  if (cfg.format == "json") {
    Json results = Json::array();
    for (const auto& r : rows) results.push_back(to_json(r));
    out << Json{{"sample", sample_json(sample)}, {"results", results}}.dump(2) << '\n';
  } else {
    write_pair_counts_csv(out, rows);
  }
}

std::vector<FormulaValue> formula_rows(const BlockParams& p) {
  std::vector<FormulaValue> rows;
  rows.push_back(main_pair_count(p));
  rows.push_back(main_pair_count_reordered(p));
  rows.push_back(dominant_term(p));
  rows.push_back(carry_chain_pair_count(p, FormulaForm::sum));
  rows.push_back(carry_chain_pair_count(p, FormulaForm::closed));
  if (p.middle() >= 3) rows.push_back(all_ones_pair_count(p));
  rows.push_back(appendix_match_count(p, p.d(), AppendixBranch::j_eq_d_one));
  rows.push_back(appendix_match_count(p, p.d(), AppendixBranch::j_eq_d_zero));
  for (unsigned j = p.d() + 1; j + 1 <= p.width(); ++j) {
    rows.push_back(appendix_match_count(p, j, AppendixBranch::j_gt_d_one));
    rows.push_back(appendix_match_count(p, j, AppendixBranch::j_gt_d_zero));
  }
  if (p.middle() >= 5) {
    auto eq = appendix_pair_count(p, AppendixMode::j_eq_d);
    rows.push_back(eq.sum_form);
    rows.push_back(eq.closed_form);
  }
  auto gt = appendix_pair_count(p, AppendixMode::j_gt_d);
  rows.push_back(gt.sum_form);
  rows.push_back(gt.closed_form);
  return rows;
}

int run_digits(std::ostream& out, const RunConfig& cfg) {
  if (cfg.base < 2 || cfg.base > 36) throw std::invalid_argument("--base must be in [2, 36]");
  DigitCursor cursor(StreamPosition(BigInt(cfg.start)), cfg.base);
  static constexpr char kSymbols[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string digits;
  digits.reserve(cfg.len);
  for (std::uint64_t t = 0; t < cfg.len; ++t) digits.push_back(kSymbols[cursor.next()]);
  out << digits << '\n';
  return 0;
}

int run_shifts(std::ostream& out, const RunConfig& cfg) {
  const SequenceSample sample = make_sample(cfg.sample);
  if (cfg.format == "json") {
    Json values = Json::array();
    for (std::uint64_t v : sample.values) values.push_back(std::to_string(v));
    Json j = sample_json(sample);
    j["values"] = values;
    out << j.dump(2) << '\n';
  } else {
    write_sample_csv(out, sample);
  }
  return 0;
}

int run_ppc(std::ostream& out, const RunConfig& cfg, bool weak) {
  const SequenceSample sample = make_sample(cfg.sample);
  const Ratio s = parse_ratio(cfg.s);
  PairCountResult r = weak ? weak_ppc_statistic(sample, s, parse_ratio(cfg.beta)) : ppc_statistic(sample, s);
  emit_pair_counts(out, cfg, sample, {r});
  return 0;
}

int run_curve(std::ostream& out, const RunConfig& cfg) {
  const SequenceSample sample = make_sample(cfg.sample);
  const std::vector<Ratio> grid = parse_grid(cfg.grid);
  emit_pair_counts(out, cfg, sample, ppc_curve(sample, grid));
  return 0;
}

int run_formulas(std::ostream& out, const RunConfig& cfg) {
  const auto [d_lo, d_hi] = parse_range(cfg.d_range);
  const auto [e_lo, e_hi] = parse_range(cfg.e_range);
  std::vector<FormulaValue> rows;
  for (unsigned e = e_lo; e <= e_hi; ++e) {
    for (unsigned d = d_lo; d <= d_hi; ++d) {
      if (d < e + 2) continue;
      for (auto& f : formula_rows(BlockParams(d, e))) rows.push_back(std::move(f));
    }
  }
  if (rows.empty()) throw std::invalid_argument("no valid (d, e) in the requested grid (need d >= e + 2)");
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& f : rows) arr.push_back(to_json(f));
    out << Json{{"formulas", arr}}.dump(2) << '\n';
  } else {
    out << kFormulaCsvHeader << '\n';
    for (const auto& f : rows) write_formula_csv_row(out, f);
  }
  return 0;
}

int run_verify(std::ostream& out, const RunConfig& cfg) {
  const auto [d, d_hi] = parse_range(cfg.d_range);
  const auto [e, e_hi] = parse_range(cfg.e_range);
  if (d != d_hi || e != e_hi) throw std::invalid_argument("verify takes a single --d and --e");
  const OracleReport report = verify(d, e);
  if (!cfg.bits_out.empty()) {
    std::ofstream bits(cfg.bits_out, std::ios::binary);
    if (!bits) throw std::runtime_error("cannot open " + cfg.bits_out);
    write_raw_bits(bits, build_block_bits(d, 0).interior());
  }
  if (cfg.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    write_report_csv(out, report);
  }
  return cfg.strict && report.has_deviation() ? kExitDeviation : 0;
}

// Preset: d = 2^e, N = 2^(d+e), s = 1.
int run_theorem1(std::ostream& out, const RunConfig& cfg) {
  const unsigned e = cfg.theorem_e;
  if (e < 1 || e > 4) throw std::invalid_argument("theorem1 supports --e in [1, 4] (e = 5 needs N = 2^37)");
  const unsigned d = 1u << e;
  const std::uint64_t n = std::uint64_t{1} << (d + e);
  enforce_width_rule(n, cfg.sample.w);
  const SequenceSample sample = champernowne_sequence(n, cfg.sample.w);
  const PairCountResult r = ppc_statistic(sample, Ratio::integer(1));
  Json j{{"e", e}, {"d", d}, {"w", cfg.sample.w}};
  j["statistic"] = to_json(r);
  if (d >= e + 2) {
    const BlockParams p(d, e);
    const BigInt main = main_pair_count(p).value;
    const BigInt dom = dominant_term(p).value;
    j["main_pair_count"] = main.str();
    j["main_pair_count_over_N"] = to_decimal(main, BigInt(n), kDecimalPlaces);
    j["dominant_term"] = dom.str();
    j["dominant_term_over_N"] = to_decimal(dom, BigInt(n), kDecimalPlaces);
  }
  if (cfg.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    out << "e,d,w," << kPairCountCsvHeader << '\n' << e << ',' << d << ',' << cfg.sample.w << ',';
    write_pair_count_csv_row(out, r);
  }
  return 0;
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
}

void add_sample(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--kind", cfg.sample.kind, "Sequence kind")
      ->check(CLI::IsMember({"champernowne", "uniform", "kronecker", "sqrt_n"}));
  sub->add_option("--N", cfg.sample.n, "Sequence length");
  sub->add_option("--w", cfg.sample.w, "Bits per value (w >= log2(N) + 8)");
  sub->add_option("--seed", cfg.sample.seed, "Seed for the uniform kind");
  sub->add_option("--param", cfg.sample.param, "Kronecker step as a w-bit integer, or 'golden'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair-correlation laboratory for the base-2 Champernowne constant"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* digits = app.add_subcommand("digits", "Print a slice of the digit stream");
  digits->add_option("--start", cfg.start, "First stream position (1-based)");
  digits->add_option("--len", cfg.len, "Number of digits");
  digits->add_option("--base", cfg.base, "Base of the expansion");
  digits->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");

  auto* shifts = app.add_subcommand("shifts", "Dump a sequence sample");
  add_sample(shifts, cfg);
  add_format(shifts, cfg);

  auto* ppc = app.add_subcommand("ppc", "Pair-correlation statistic F_N(s)");
  add_sample(ppc, cfg);
  add_format(ppc, cfg);
  ppc->add_option("--s", cfg.s, "Threshold s as p/q");

  auto* weak = app.add_subcommand("weak-ppc", "Weak pair-correlation statistic with exponent beta");
  add_sample(weak, cfg);
  add_format(weak, cfg);
  weak->add_option("--s", cfg.s, "Threshold s as p/q");
  weak->add_option("--beta", cfg.beta, "Exponent beta as u/v, 0 < beta < 1")->required();

  auto* curve = app.add_subcommand("curve", "F_N(s) over a grid of thresholds");
  add_sample(curve, cfg);
  add_format(curve, cfg);
  curve->add_option("--grid", cfg.grid, "Comma-separated ascending thresholds");

  auto* formulas = app.add_subcommand("formulas", "Evaluate the counting formulas over a (d, e) grid");
  formulas->add_option("--d", cfg.d_range, "Word length d or range lo:hi");
  formulas->add_option("--e", cfg.e_range, "Overlap e or range lo:hi");
  add_format(formulas, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "Compare formulas against brute-force block scans");
  verify_cmd->add_option("--d", cfg.d_range, "Word length d (<= 14)");
  verify_cmd->add_option("--e", cfg.e_range, "Overlap e");
  verify_cmd->add_flag("--strict", cfg.strict, "Exit with status 2 when a deviation is logged");
  verify_cmd->add_option("--bits-out", cfg.bits_out, "Also write the block bits as a raw bit file");
  add_format(verify_cmd, cfg);

  auto* theorem1 = app.add_subcommand("theorem1", "Preset d = 2^e, N = 2^(d+e), s = 1");
  theorem1->add_option("--e", cfg.theorem_e, "Overlap e (3 or 4)");
  theorem1->add_option("--w", cfg.sample.w, "Bits per value");
  add_format(theorem1, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::ofstream file;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + cfg.out_path);
    }
    std::ostream& out = cfg.out_path.empty() ? std::cout : file;
    if (digits->parsed()) return run_digits(out, cfg);
    if (shifts->parsed()) return run_shifts(out, cfg);
    if (ppc->parsed()) return run_ppc(out, cfg, false);
    if (weak->parsed()) return run_ppc(out, cfg, true);
    if (curve->parsed()) return run_curve(out, cfg);
    if (formulas->parsed()) return run_formulas(out, cfg);
    if (verify_cmd->parsed()) return run_verify(out, cfg);
    if (theorem1->parsed()) return run_theorem1(out, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
