#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankdepth/inference.hpp"
#include "rankdepth/pairwise.hpp"
#include "rankdepth/permutation.hpp"
#include "rankdepth/sample.hpp"
#include "rankdepth/trimming.hpp"

namespace rankdepth {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ranks: row r, column i holds sigma_r(i).
/// ordering: row lists items by preference position; converted via inverse.
enum class RankingFormat { Ranks, Ordering };

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline bool is_numeric_field(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits = true;
    ++i;
  }
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return digits && i == s.size();
}

}  // namespace detail

inline RankingSample parse_rankings(std::istream& in,
                                    RankingFormat format = RankingFormat::Ranks,
                                    bool one_based = true) {
  std::vector<Permutation> rankings;
  std::vector<std::string> labels;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  std::size_t expected_cols = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++row;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (first) {
      first = false;
      bool header = false;
      for (const auto& f : fields)
        if (!detail::is_numeric_field(f)) header = true;
      if (header) {
        labels = fields;
        expected_cols = fields.size();
        continue;
      }
      expected_cols = fields.size();
    }
    if (fields.size() != expected_cols)
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(expected_cols) + " columns, got " +
                       std::to_string(fields.size()));
    std::vector<int> values;
    values.reserve(fields.size());
    for (const auto& f : fields) {
      if (!detail::is_numeric_field(f))
        throw ParseError("row " + std::to_string(row) + ": non-numeric field '" + f + "'");
      values.push_back(std::stoi(f) - (one_based ? 1 : 0));
    }
    try {
      Permutation p{std::move(values)};
      rankings.push_back(format == RankingFormat::Ranks ? p : p.inverse());
    } catch (const std::invalid_argument&) {
      throw ParseError("row " + std::to_string(row) + ": not a permutation of 1.." +
                       std::to_string(fields.size()));
    }
  }
  if (rankings.empty()) throw ParseError("no rankings found");
  return RankingSample(std::move(rankings), {}, std::move(labels));
}

inline RankingSample parse_rankings_file(const std::string& path,
                                         RankingFormat format = RankingFormat::Ranks,
                                         bool one_based = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return parse_rankings(in, format, one_based);
}

inline void emit_rankings(std::ostream& out, const RankingSample& sample,
                          RankingFormat format = RankingFormat::Ranks,
                          bool one_based = true) {
  if (!sample.item_labels.empty()) {
    for (int i = 0; i < sample.item_count(); ++i)
      out << (i ? "," : "") << sample.item_labels[static_cast<std::size_t>(i)];
    out << '\n';
  }
  for (const auto& r : sample.rankings) {
    const Permutation row = format == RankingFormat::Ranks ? r : r.inverse();
    for (int i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row(i) + (one_based ? 1 : 0);
    out << '\n';
  }
}

/// Matrix CSV: a single "n" line, then n comma-separated rows.
inline void emit_pairwise(std::ostream& out, const PairwiseMatrix& m) {
  out << m.size() << '\n';
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

inline PairwiseMatrix parse_pairwise(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("pairwise: empty input");
  const int n = std::stoi(line);
  if (n < 1) throw ParseError("pairwise: bad n");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError("pairwise: truncated matrix");
    const auto fields = detail::split_csv_line(line);
    if (static_cast<int>(fields.size()) != n)
      throw ParseError("pairwise: row " + std::to_string(i + 1) + " has wrong width");
    for (const auto& f : fields) p.push_back(std::stod(f));
  }
  return PairwiseMatrix(n, std::move(p));
}

inline std::string ranking_to_string(const Permutation& p, bool one_based = true,
                                     char sep = ' ') {
  std::string s;
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(p(i) + (one_based ? 1 : 0));
  }
  return s;
}

/// Trim trace CSV, one row per recorded iteration.
inline void emit_trim_trace(std::ostream& out,
                            const std::vector<TrimIteration>& trace) {
  out << "iteration,removed_distinct,removed_count,remaining,cycles,"
         "candidate_median,distance_to_reference,median_depth,dispersion\n";
  for (const auto& it : trace) {
    out << it.index << ',' << it.removed.size() << ',' << it.removed_count << ','
        << it.remaining << ',' << it.cycles << ','
        << ranking_to_string(it.candidate_median) << ',';
    if (it.distance_to_reference) out << *it.distance_to_reference;
    out << ',' << it.median_depth << ',' << it.dispersion << '\n';
  }
}

inline void emit_dd_plot(std::ostream& out, const DDPlotData& data) {
  out << "ranking,depth1,depth2,origin\n";
  for (const auto& pt : data.points)
    out << ranking_to_string(pt.sigma) << ',' << pt.depth1 << ',' << pt.depth2
        << ',' << pt.origin << '\n';
}

}  // namespace rankdepth
