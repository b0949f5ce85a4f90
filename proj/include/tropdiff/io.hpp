#pragma once

// File formats (JSON, UTF-8).
//
// Field:   {"kind": "trivial" | "padic" | "eisenstein", "p": 3}
// System:  {"field": F, "vars": 1, "truncation": 18, "order": 9,
//           "polynomials": ["x' - 3*zeta*t^2*x"]}          ("order" optional)
// Series:  {"field": F, "kind": "classical" | "tropical", "truncation": 18,
//           "exact": false, "coeffs": [{"n": 3, "val": V}, ...]}
//   Classical V is a rational string, or for Eisenstein fields an array of
//   p - 1 rational strings (c_0, ..., c_{p-2}). Tropical V is a rational
//   string or "inf". Omitted indices are 0 (classical) or INF (tropical).
// Candidate: a single series record or {"series": [record, ...]}, one per
// variable.
// Report:  see report_to_json; schema id FTReport::schema.

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tropdiff {

/// "trivial", "padic:P" or "eisenstein:P".
Backend parse_backend_spec(std::string_view spec);

struct SystemFile {
  Backend backend;
  unsigned nvars = 1;
  std::size_t truncation = 0;
  std::optional<unsigned> order;
  std::vector<std::string> sources;
  std::vector<DiffPoly> polynomials;
};

SystemFile parse_system(std::string_view json_text);

struct SeriesFile {
  Backend backend;
  bool tropical = false;
  std::vector<PowerSeries> classical;
  std::vector<TropSeries> tropical_series;

  /// The tropical view: given tropical series, or trop of classical ones.
  std::vector<TropSeries> as_tropical() const;
};

SeriesFile parse_series(std::string_view json_text);

std::string series_to_json(const PowerSeries& s);
std::string series_to_json(const TropSeries& s, const Backend& b);

std::string report_to_json(const FTReport& r);
std::string reports_to_json(const std::vector<FTReport>& reports);
/// Human-readable rendering of a report_to_json document.
std::string report_json_to_text(std::string_view json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tropdiff
