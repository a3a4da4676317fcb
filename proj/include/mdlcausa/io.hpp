#pragma once

// Tabular input, run configuration and result serialization.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mdlcausa/codecs.hpp"
#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"
#include "mdlcausa/inference.hpp"
#include "mdlcausa/lab.hpp"

namespace mdlcausa {

/// Named categorical columns. Codes are assigned per column in order of first
/// appearance; labels[c][code] recovers the original cell text.
struct Dataset {
  std::vector<std::string> names;
  PairedSample sample;
  std::vector<std::vector<std::string>> labels;

  std::size_t column_index(std::string_view ref) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == ref) return i;
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), idx);
    if (ec == std::errc{} && ptr == ref.data() + ref.size() && idx < names.size()) return idx;
    throw InvalidArgument("unknown column '" + std::string(ref) + "'");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

/// Parses a comma- or tab-separated table. `delimiter == 0` picks tab when the
/// first line has tabs and no commas, comma otherwise. Blank lines are skipped;
/// quoting is not supported.
inline Dataset parse_table(std::istream& in, char delimiter = 0, bool has_header = true) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    lines.emplace_back(lineno, line);
  }
  if (lines.empty()) throw ParseError("empty input: no rows");
  if (delimiter == 0) {
    const auto& first = lines.front().second;
    delimiter = (first.find('\t') != std::string::npos && first.find(',') == std::string::npos) ? '\t' : ',';
  }

  const std::size_t width = detail::split(lines.front().second, delimiter).size();
  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (has_header) {
    for (auto cell : detail::split(lines.front().second, delimiter)) names.emplace_back(detail::trim(cell));
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) names.push_back("c" + std::to_string(c));
  }
  if (first_data >= lines.size()) throw ParseError("no data rows after the header");

  std::vector<std::vector<int>> columns(width);
  std::vector<std::vector<std::string>> labels(width);
  std::vector<std::map<std::string, int, std::less<>>> codes(width);
  for (std::size_t r = first_data; r < lines.size(); ++r) {
    const auto& [lineno, text] = lines[r];
    const auto cells = detail::split(text, delimiter);
    if (cells.size() != width)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                       " fields, found " + std::to_string(cells.size()));
    for (std::size_t c = 0; c < width; ++c) {
      const auto cell = detail::trim(cells[c]);
      if (cell.empty())
        throw ParseError("line " + std::to_string(lineno) + ", column " + std::to_string(c + 1) + " (" +
                         names[c] + "): empty cell");
      auto it = codes[c].find(cell);
      if (it == codes[c].end()) {
        it = codes[c].emplace(std::string(cell), static_cast<int>(labels[c].size())).first;
        labels[c].emplace_back(cell);
      }
      columns[c].push_back(it->second);
    }
  }
  std::vector<int> ks;
  for (const auto& l : labels) ks.push_back(static_cast<int>(l.size()));
  return Dataset{std::move(names), PairedSample(std::move(columns), std::move(ks)), std::move(labels)};
}

inline Dataset load_table(const std::string& path, char delimiter = 0, bool has_header = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_table(in, delimiter, has_header);
}

/// Probability matrix, one row of P(x, .) per line.
inline JointTable parse_joint(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (detail::trim(line).empty()) continue;
    const char delim = line.find(',') != std::string::npos ? ',' : '\t';
    std::vector<double> row;
    for (auto cell : detail::split(line, delim)) {
      const auto t = detail::trim(cell);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError("line " + std::to_string(lineno) + ": '" + std::string(t) + "' is not a number");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(lineno) + ": ragged probability row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty joint table");
  return JointTable::from_rows(rows);
}

enum class OutputFormat { Json, Csv };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw InvalidArgument("unknown output format '" + std::string(s) + "' (expected json or csv)");
}

inline CodecKind parse_codec(std::string_view s) {
  if (s == "crude") return CrudeTwoPart{};
  if (s == "nml") return Nml{};
  throw InvalidArgument("unknown codec '" + std::string(s) + "' (expected crude or nml)");
}

struct RunConfig {
  CodecKind codec = CrudeTwoPart{};
  double eps = kDefaultTieEps;
  double alpha = kDefaultGateAlpha;
  bool gate = true;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Json;

  InferOptions infer_options() const { return {codec, eps, alpha, gate}; }
};

inline constexpr const char* kSeedEnv = "MDLCAUSA_SEED";
inline constexpr const char* kFormatEnv = "MDLCAUSA_FORMAT";

// Environment values replace the built-in defaults; explicit flags win over both.
inline void apply_environment(RunConfig& cfg) {
  if (const char* seed = std::getenv(kSeedEnv); seed != nullptr && *seed != '\0') {
    const std::string_view sv(seed);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
      throw InvalidArgument(std::string(kSeedEnv) + " is not an unsigned integer");
    cfg.seed = v;
  }
  if (const char* fmt = std::getenv(kFormatEnv); fmt != nullptr && *fmt != '\0') cfg.format = parse_format(fmt);
}

// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline nlohmann::ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

inline nlohmann::ordered_json to_json(const DirectionScore& s, int kx, int ky, const CodecKind& codec) {
  nlohmann::ordered_json j;
  j["direction"] = direction_label(s.decision);
  j["l_xy_bits"] = number_json(s.l_xy);
  j["l_yx_bits"] = number_json(s.l_yx);
  j["delta_bits"] = number_json(s.delta);
  j["confidence"] = number_json(s.confidence);
  j["dependent"] = s.dependent;
  j["n"] = s.n;
  j["k_x"] = kx;
  j["k_y"] = ky;
  j["codec"] = codec_name(codec);
  return j;
}

inline constexpr std::string_view kScoreCsvHeader =
    "direction,l_xy_bits,l_yx_bits,delta_bits,confidence,dependent,n,k_x,k_y,codec";

inline std::string to_csv_row(const DirectionScore& s, int kx, int ky, const CodecKind& codec) {
  std::ostringstream os;
  os << direction_label(s.decision) << ',' << format_number(s.l_xy) << ',' << format_number(s.l_yx) << ','
     << format_number(s.delta) << ',' << format_number(s.confidence) << ',' << (s.dependent ? "true" : "false")
     << ',' << s.n << ',' << kx << ',' << ky << ',' << codec_name(codec);
  return os.str();
}

inline constexpr std::string_view kLabCsvHeader = "experiment,n,rep,direction,value_bits,reference_bits,gap_bits";

inline void write_lab_csv(std::ostream& out, const std::vector<LabRow>& rows) {
  out << kLabCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.experiment << ',' << r.n << ',' << r.rep << ',' << direction_label(r.direction) << ','
        << format_number(r.value) << ',' << format_number(r.reference) << ',' << format_number(r.gap) << '\n';
}

}  // namespace mdlcausa
