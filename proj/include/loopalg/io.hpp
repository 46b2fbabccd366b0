#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/poly.hpp"
#include "loopalg/series.hpp"

namespace loopalg {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are written as JSON numbers, larger ones as
/// decimal strings.
inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

inline BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "not an integer: \"" + s + "\"");
    }
    return BigInt(s);
  }
  throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

/// {"m": int, "facets": [[int,...],...]} with 1-based labels.
inline SimplicialComplex complex_from_json(const Json& j, int max_vertices = kDefaultMaxVertices) {
  try {
    return validate(j.at("facets").get<std::vector<std::vector<int>>>(), j.at("m").get<int>(), max_vertices);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed complex: ") + e.what());
  }
}

/// One facet per line, whitespace-separated labels, '#' starts a comment.
/// m is the largest label present.
inline SimplicialComplex complex_from_text(const std::string& text, int max_vertices = kDefaultMaxVertices) {
  std::vector<std::vector<int>> facets;
  int m = 0;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<int> facet;
    std::string w;
    while (words >> w) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size()) throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": bad label '" + w + "'");
      if (v < 1) throw Error(ErrorKind::OutOfRange, "line " + std::to_string(lineno) + ": labels start at 1");
      facet.push_back(v);
      m = std::max(m, v);
    }
    if (!facet.empty()) facets.push_back(std::move(facet));
  }
  return validate(facets, m, max_vertices);
}

inline Json complex_to_json(const SimplicialComplex& k) {
  Json facets = Json::array();
  for (Mask f : k.facets()) {
    if (f == 0 && k.vertex_count() > 0) continue;
    Json facet = Json::array();
    for (int v : VertexSubset(f).vertices()) facet.push_back(v);
    facets.push_back(std::move(facet));
  }
  return Json{{"m", k.vertex_count()}, {"facets", std::move(facets)}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, what + ": " + e.what());
  }
}

/// JSON if the first non-blank character is '{', the text format otherwise.
inline SimplicialComplex load_complex(const std::string& path, int max_vertices = kDefaultMaxVertices) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return complex_from_json(parse_json_text(text, path), max_vertices);
  return complex_from_text(text, max_vertices);
}

inline Json poly_coeffs(const LaurentPoly& p) {
  Json out = Json::array();
  if (p.is_zero()) return out;
  require(p.min_degree() >= 0, "coefficient array of a polynomial with negative degrees");
  for (int d = 0; d <= p.max_degree(); ++d) out.push_back(big_to_json(p.coefficient(d)));
  return out;
}

/// {"trunc": N, "coeffs": [c0, ..., cN]}
inline Json series_to_json(const TruncatedSeries& s) {
  Json coeffs = Json::array();
  for (const BigInt& c : s.coeffs()) coeffs.push_back(big_to_json(c));
  return Json{{"trunc", s.trunc()}, {"coeffs", std::move(coeffs)}};
}

/// Read a series and re-truncate it at `trunc`; the input must be known at
/// least that far.
inline TruncatedSeries series_from_json(const Json& j, int trunc) {
  if (!j.is_object() || !j.contains("coeffs")) throw Error(ErrorKind::InvalidInput, "series must be {\"trunc\", \"coeffs\"}");
  const Json& cs = j.at("coeffs");
  if (!cs.is_array()) throw Error(ErrorKind::InvalidInput, "\"coeffs\" must be an array");
  const int given = j.contains("trunc") ? j.at("trunc").get<int>() : static_cast<int>(cs.size()) - 1;
  if (given < trunc) {
    throw Error(ErrorKind::InvalidInput, "series known to degree " + std::to_string(given) + ", need " + std::to_string(trunc));
  }
  if (static_cast<int>(cs.size()) > given + 1) throw Error(ErrorKind::InvalidInput, "more coefficients than trunc + 1");
  TruncatedSeries s(trunc);
  for (int d = 0; d < static_cast<int>(cs.size()) && d <= trunc; ++d) s[d] = big_from_json(cs[d]);
  return s;
}

/// A list of per-vertex series: a JSON array of series objects.
inline std::vector<TruncatedSeries> series_list_from_json(const Json& j, int trunc) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of series");
  std::vector<TruncatedSeries> out;
  for (const Json& s : j) out.push_back(series_from_json(s, trunc));
  return out;
}

}  // namespace loopalg
