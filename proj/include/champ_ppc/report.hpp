#pragma once

// Serialization of samples, pair counts, formula values and oracle reports.
// Numbers are written as exact integers or decimal strings, never as
// floating point.

#include "champ_ppc/bigint.hpp"
#include "champ_ppc/oracle.hpp"
#include "champ_ppc/paircorr.hpp"
#include "champ_ppc/patterncount.hpp"
#include "champ_ppc/shifts.hpp"

#include "json.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace champ_ppc {

using Json = nlohmann::ordered_json;

inline constexpr unsigned kDecimalPlaces = 12;

inline void write_sample_csv(std::ostream& out, const SequenceSample& sample) {
  out << "# kind=" << to_string(sample.kind) << ",N=" << sample.size() << ",w=" << sample.width
      << ",seed=" << (sample.seed ? std::to_string(*sample.seed) : "none")
      << ",parameter=" << (sample.parameter ? std::to_string(*sample.parameter) : "none") << '\n';
  out << "numerator\n";
  for (std::uint64_t v : sample.values) out << v << '\n';
}

inline constexpr const char* kPairCountCsvHeader =
    "s_num,s_den,beta_num,beta_den,N,count_lower,count_upper,norm_lower,norm_upper";

inline void write_pair_count_csv_row(std::ostream& out, const PairCountResult& r) {
  out << r.s.num << ',' << r.s.den << ',' << r.beta.num << ',' << r.beta.den << ',' << r.N << ','
      << r.count_lower << ',' << r.count_upper << ',' << to_decimal(r.normalized_lower, kDecimalPlaces) << ','
      << to_decimal(r.normalized_upper, kDecimalPlaces) << '\n';
}

inline void write_pair_counts_csv(std::ostream& out, std::span<const PairCountResult> rows) {
  out << kPairCountCsvHeader << '\n';
  for (const auto& r : rows) write_pair_count_csv_row(out, r);
}

inline Json to_json(const PairCountResult& r) {
  return Json{{"s", r.s.str()},
              {"beta", r.beta.str()},
              {"N", std::to_string(r.N)},
              {"count_lower", std::to_string(r.count_lower)},
              {"count_upper", std::to_string(r.count_upper)},
              {"norm_lower", to_decimal(r.normalized_lower, kDecimalPlaces)},
              {"norm_upper", to_decimal(r.normalized_upper, kDecimalPlaces)},
              {"norm_lower_exact", r.normalized_lower.str()},
              {"norm_upper_exact", r.normalized_upper.str()}};
}

inline Json to_json(const FormulaValue& f) {
  Json j{{"name", f.name}, {"d", f.params.d()}, {"e", f.params.e()}};
  if (f.j) j["j"] = *f.j;
  j["form"] = std::string(to_string(f.form));
  j["value"] = f.value.str();
  if (f.flagged) j["flagged"] = true;
  return j;
}

inline constexpr const char* kFormulaCsvHeader = "name,d,e,j,form,value,flagged";

inline void write_formula_csv_row(std::ostream& out, const FormulaValue& f) {
  out << f.name << ',' << f.params.d() << ',' << f.params.e() << ',' << (f.j ? std::to_string(*f.j) : "")
      << ',' << to_string(f.form) << ',' << f.value << ',' << (f.flagged ? 1 : 0) << '\n';
}

inline Json to_json(const MatchHistogram& hist) {
  Json j = Json::object();
  for (const auto& [m, count] : hist) j[std::to_string(m)] = count.str();
  return j;
}

inline Json to_json(const OracleReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"name", r.name},
                        {"formula_value", r.formula_value.str()},
                        {"oracle_value", r.oracle_value.str()},
                        {"verdict", std::string(to_string(r.verdict))},
                        {"note", r.note}});
  }
  return Json{{"d", report.params.d()},
              {"e", report.params.e()},
              {"w", report.params.width()},
              {"scope", std::string(to_string(report.scope))},
              {"rows", rows},
              {"histogram_observed", to_json(report.histogram_observed)}};
}

inline constexpr const char* kReportCsvHeader = "name,formula_value,oracle_value,verdict,note";

inline void write_report_csv(std::ostream& out, const OracleReport& report) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.name << ',' << r.formula_value << ',' << r.oracle_value << ',' << to_string(r.verdict) << ','
        << r.note << '\n';
  }
}

// 8 bits per byte, first bit in the most significant position, zero padded.
inline void write_raw_bits(std::ostream& out, std::span<const std::uint8_t> bits) {
  std::uint8_t byte = 0;
  unsigned filled = 0;
  for (std::uint8_t b : bits) {
    byte = static_cast<std::uint8_t>((byte << 1) | (b & 1));
    if (++filled == 8) {
      out.put(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.put(static_cast<char>(byte << (8 - filled)));
}

}  // namespace champ_ppc
