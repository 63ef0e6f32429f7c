// Copyright 2026 The divfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "divfront/errors.hpp"
#include "divfront/estimation.hpp"
#include "divfront/frontier.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/histogram.hpp"
#include "divfront/prd.hpp"

namespace divfront::io {

using nlohmann::json;

/// Shortest decimal that round-trips; +inf is written as "inf".
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// JSON value for an extended real: a number, or the string "inf".
inline json number_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

inline double number_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError("field '" + field + "' must be a number or \"inf\"", 0);
}

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_cell(const std::string& cell, std::size_t line) {
  const std::string t = trim(cell);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("not a number: '" + t + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'", line);
  return v;
}

/// 1-based line of a byte offset in `text`.
inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Headerless CSV, one sample per row. Blank lines are skipped; every row
/// must have the same number of columns.
inline SampleMatrix read_samples_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(detail::parse_cell(cell, lineno));
    if (!line.empty() && detail::trim(line).back() == ',') {
      throw ParseError("trailing comma", lineno);
    }
    if (cols == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError("expected " + std::to_string(cols) + " columns, found " +
                           std::to_string(row.size()),
                       lineno);
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw ParseError("no samples found", lineno);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
    }
  }
  return SampleMatrix(std::move(m));
}

inline SampleMatrix load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_samples_csv(in);
}

inline void write_samples_csv(std::ostream& out, const SampleMatrix& s) {
  for (Eigen::Index r = 0; r < s.size(); ++r) {
    for (Eigen::Index c = 0; c < s.dim(); ++c) {
      if (c) out << ',';
      out << format_number(s.rows()(r, c));
    }
    out << '\n';
  }
}

using Distribution = std::variant<Histogram, GaussianParams>;

inline std::vector<double> vector_field(const json& j, const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    throw ParseError("missing array field '" + field + "'", 0);
  }
  std::vector<double> out;
  for (const auto& v : j.at(field)) out.push_back(number_from_json(v, field));
  return out;
}

/// {"type":"histogram","probs":[...]} or
/// {"type":"gaussian","mean":[...],"cov":[[...],...]}.
inline Distribution distribution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ParseError("distribution needs a string field 'type'", 0);
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "histogram") return Histogram(vector_field(j, "probs"));
  if (type == "gaussian") {
    const auto mean = vector_field(j, "mean");
    if (!j.contains("cov") || !j.at("cov").is_array()) {
      throw ParseError("missing array field 'cov'", 0);
    }
    const auto& rows = j.at("cov");
    const auto d = static_cast<Eigen::Index>(mean.size());
    if (static_cast<Eigen::Index>(rows.size()) != d) {
      throw DimensionError("cov must have as many rows as mean has entries");
    }
    Eigen::MatrixXd cov(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw DimensionError("cov must be square");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        cov(r, c) = number_from_json(row.at(static_cast<std::size_t>(c)), "cov");
      }
    }
    return GaussianParams(Eigen::Map<const Eigen::VectorXd>(mean.data(), d), cov);
  }
  throw ParseError("unknown distribution type '" + type + "'", 0);
}

inline json to_json(const Histogram& h) {
  json probs = json::array();
  for (double v : h) probs.push_back(number_to_json(v));
  return {{"type", "histogram"}, {"probs", probs}};
}

inline json to_json(const GaussianParams& g) {
  json mean = json::array();
  for (Eigen::Index i = 0; i < g.dim(); ++i) mean.push_back(g.mean()(i));
  json cov = json::array();
  for (Eigen::Index r = 0; r < g.dim(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < g.dim(); ++c) row.push_back(g.cov()(r, c));
    cov.push_back(row);
  }
  return {{"type", "gaussian"}, {"mean", mean}, {"cov", cov}};
}

/// Parses JSON text, reporting syntax errors with their line number.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), detail::line_of(text, e.byte));
  }
}

inline json load_json_file(const std::string& path) {
  return parse_json_text(detail::slurp(path));
}

inline Distribution load_distribution(const std::string& path) {
  const json j = load_json_file(path);
  try {
    return distribution_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed distribution: ") + e.what(), 0);
  }
}

/// Header `lambda,loss_recall,loss_precision`, rows ascending in lambda.
inline void write_frontier_csv(std::ostream& out, const FrontierCurve& curve) {
  out << "lambda,loss_recall,loss_precision\n";
  for (const auto& p : curve.points) {
    out << format_number(p.lambda) << ',' << format_number(p.div_p) << ','
        << format_number(p.div_q) << '\n';
  }
}

/// Header `recall,precision`, rows ascending in recall.
inline void write_prd_csv(std::ostream& out, const PRDCurve& curve) {
  out << "recall,precision\n";
  for (const auto& p : curve.points) {
    out << format_number(p.recall) << ',' << format_number(p.precision) << '\n';
  }
}

inline json to_json(const FrontierCurve& curve) {
  json pts = json::array();
  for (const auto& p : curve.points) {
    pts.push_back({{"lambda", number_to_json(p.lambda)},
                   {"loss_recall", number_to_json(p.div_p)},
                   {"loss_precision", number_to_json(p.div_q)}});
  }
  return {{"side", std::string(to_string(curve.side))},
          {"alpha", curve.alpha.to_string()},
          {"points", pts}};
}

inline json to_json(const PRDCurve& curve) {
  json pts = json::array();
  for (const auto& p : curve.points) {
    pts.push_back({{"recall", number_to_json(p.recall)}, {"precision", number_to_json(p.precision)}});
  }
  return pts;
}

}  // namespace divfront::io
