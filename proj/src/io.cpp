#include "tropdiff/io.hpp"

#include "tropdiff/error.hpp"
#include "tropdiff/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tropdiff {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad_input(std::string("malformed JSON: ") + e.what());
  }
}

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad_input(std::string("missing field '") + key + "'");
  return obj.at(key);
}

unsigned long as_unsigned(const Json& v, const char* key) {
  if (!v.is_number_unsigned()) bad_input(std::string("'") + key + "' must be a non-negative integer");
  return v.get<unsigned long>();
}

std::string as_string(const Json& v, const char* what) {
  if (!v.is_string()) bad_input(std::string(what) + " must be a string");
  return v.get<std::string>();
}

Backend backend_from_json(const Json& f) {
  const std::string kind = as_string(require(f, "kind"), "field kind");
  if (kind == "trivial") return Backend::trivial();
  const unsigned long p = as_unsigned(require(f, "p"), "p");
  if (kind == "padic") return Backend::padic(p);
  if (kind == "eisenstein") return Backend::eisenstein(p);
  bad_input("unknown field kind '" + kind + "'");
}

Json backend_to_json(const Backend& b) {
  Json j;
  switch (b.kind()) {
    case BackendKind::RationalTrivial: j["kind"] = "trivial"; break;
    case BackendKind::RationalPadic: j["kind"] = "padic"; break;
    case BackendKind::Eisenstein: j["kind"] = "eisenstein"; break;
  }
  if (b.kind() != BackendKind::RationalTrivial) j["p"] = b.prime();
  return j;
}

FieldElem field_elem_from_json(const Json& v, const Backend& b) {
  if (v.is_array()) {
    std::vector<Rational> c;
    for (const auto& x : v) c.push_back(parse_rational(as_string(x, "coordinate")));
    return FieldElem::from_coeffs(b, std::move(c));
  }
  return FieldElem::from_rational(b, parse_rational(as_string(v, "coefficient")));
}

Json field_elem_to_json(const FieldElem& x) {
  if (x.coeffs().size() == 1) return to_string(x.coeffs()[0]);
  Json a = Json::array();
  for (const auto& c : x.coeffs()) a.push_back(to_string(c));
  return a;
}

struct Record {
  Backend backend;
  bool tropical;
  std::optional<PowerSeries> classical;
  std::optional<TropSeries> trop;
};

Record series_from_json(const Json& j) {
  const Backend b = backend_from_json(require(j, "field"));
  const std::size_t n = as_unsigned(require(j, "truncation"), "truncation");
  const std::string kind = j.contains("kind") ? as_string(j.at("kind"), "kind") : "classical";
  const Json& coeffs = require(j, "coeffs");
  if (!coeffs.is_array()) bad_input("'coeffs' must be an array");
  auto index_of = [&](const Json& c) {
    const std::size_t k = as_unsigned(require(c, "n"), "n");
    if (k > n) bad_input("coefficient index " + std::to_string(k) + " exceeds truncation");
    return k;
  };
  if (kind == "classical") {
    std::vector<FieldElem> c(n + 1, FieldElem::zero(b));
    for (const auto& entry : coeffs) c[index_of(entry)] = field_elem_from_json(require(entry, "val"), b);
    return {b, false, PowerSeries(b, std::move(c)), std::nullopt};
  }
  if (kind == "tropical") {
    std::vector<TropNum> c(n + 1);
    for (const auto& entry : coeffs) {
      c[index_of(entry)] = parse_tropnum(as_string(require(entry, "val"), "tropical value"));
    }
    const bool exact = j.contains("exact") && j.at("exact").is_boolean() && j.at("exact").get<bool>();
    return {b, true, std::nullopt, TropSeries(std::move(c), b.nat_valuation(), exact)};
  }
  bad_input("unknown series kind '" + kind + "'");
}

Json report_json(const FTReport& r) {
  Json j;
  j["schema"] = FTReport::schema;
  j["backend"] = r.backend;
  j["p"] = r.prime;
  j["truncation"] = r.truncation;
  j["order"] = r.order;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["passed"] = r.passed;
  j["failed_step"] = r.failed_step ? Json(*r.failed_step) : Json(nullptr);
  Json sections = Json::array();
  for (const auto& s : r.sections) {
    Json js;
    js["name"] = s.name;
    js["order"] = s.order;
    js["truncation"] = s.truncation;
    js["passed"] = s.passed;
    js["truncation_limited"] = s.truncation_limited;
    js["first_failure"] = s.first_failure ? Json(*s.first_failure) : Json(nullptr);
    Json checks = Json::array();
    for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    js["checks"] = std::move(checks);
    Json table = Json::array();
    for (const auto& row : s.table) {
      table.push_back({{"generator", row.generator},
                       {"order", row.order},
                       {"value", row.value},
                       {"attained", row.attained},
                       {"vanishes", row.vanishes},
                       {"truncation_limited", row.truncation_limited}});
    }
    js["table"] = std::move(table);
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  return j;
}

const char* verdict(bool passed) { return passed ? "PASS" : "FAIL"; }

void render_report(std::ostringstream& out, const Json& r) {
  out << "report " << r.at("schema").get<std::string>() << "\n";
  out << "  backend " << r.at("backend").get<std::string>() << ", N = " << r.at("truncation")
      << ", m = " << r.at("order");
  if (!r.at("seed").is_null()) out << ", seed = " << r.at("seed");
  out << "\n";
  for (const auto& s : r.at("sections")) {
    out << "[" << verdict(s.at("passed").get<bool>()) << "] " << s.at("name").get<std::string>()
        << " (N = " << s.at("truncation") << ", m = " << s.at("order") << ")";
    if (s.at("truncation_limited").get<bool>()) out << " [truncation-limited]";
    out << "\n";
    for (const auto& c : s.at("checks")) {
      out << "    " << verdict(c.at("passed").get<bool>()) << "  " << c.at("name").get<std::string>();
      const std::string detail = c.at("detail").get<std::string>();
      if (!detail.empty()) out << ": " << detail;
      out << "\n";
    }
  }
  if (r.at("passed").get<bool>()) {
    out << "ALL PASS\n";
  } else {
    out << "FAILED at " << r.at("failed_step").get<std::string>() << "\n";
  }
}

}  // namespace

Backend parse_backend_spec(std::string_view spec) {
  if (spec == "trivial") return Backend::trivial();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) bad_input("field spec must be trivial, padic:P or eisenstein:P");
  const std::string_view kind = spec.substr(0, colon);
  const std::string digits(spec.substr(colon + 1));
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9) {
    bad_input("bad prime in field spec '" + std::string(spec) + "'");
  }
  const unsigned long p = std::stoul(digits);
  if (kind == "padic") return Backend::padic(p);
  if (kind == "eisenstein") return Backend::eisenstein(p);
  bad_input("unknown field kind '" + std::string(kind) + "'");
}

SystemFile parse_system(std::string_view json_text) {
  const Json j = parse_json(json_text);
  SystemFile sys{backend_from_json(require(j, "field")), 1, 0, std::nullopt, {}, {}};
  if (j.contains("vars")) sys.nvars = static_cast<unsigned>(as_unsigned(j.at("vars"), "vars"));
  if (sys.nvars == 0) bad_input("'vars' must be positive");
  sys.truncation = as_unsigned(require(j, "truncation"), "truncation");
  if (j.contains("order")) sys.order = static_cast<unsigned>(as_unsigned(j.at("order"), "order"));
  const Json& polys = require(j, "polynomials");
  if (!polys.is_array()) bad_input("'polynomials' must be an array");
  const ParseContext ctx{sys.backend, sys.nvars, sys.truncation};
  for (const auto& p : polys) {
    sys.sources.push_back(as_string(p, "polynomial"));
    sys.polynomials.push_back(parse_poly(sys.sources.back(), ctx));
  }
  return sys;
}

std::vector<TropSeries> SeriesFile::as_tropical() const {
  if (tropical) return tropical_series;
  std::vector<TropSeries> out;
  for (const auto& s : classical) out.push_back(tropicalize_series(s));
  return out;
}

SeriesFile parse_series(std::string_view json_text) {
  const Json j = parse_json(json_text);
  std::vector<Record> records;
  if (j.is_object() && j.contains("series")) {
    const Json& list = j.at("series");
    if (!list.is_array() || list.empty()) bad_input("'series' must be a non-empty array");
    for (const auto& r : list) records.push_back(series_from_json(r));
  } else {
    records.push_back(series_from_json(j));
  }
  SeriesFile out{records.front().backend, records.front().tropical, {}, {}};
  for (auto& r : records) {
    if (!(r.backend == out.backend)) throw Error(ErrorCode::BackendMismatch, "series use different fields");
    if (r.tropical != out.tropical) bad_input("cannot mix classical and tropical series");
    if (r.classical) out.classical.push_back(std::move(*r.classical));
    if (r.trop) out.tropical_series.push_back(std::move(*r.trop));
  }
  return out;
}

std::string series_to_json(const PowerSeries& s) {
  Json j;
  j["field"] = backend_to_json(s.backend());
  j["kind"] = "classical";
  j["truncation"] = s.truncation();
  Json coeffs = Json::array();
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (!s[k].is_zero()) coeffs.push_back({{"n", k}, {"val", field_elem_to_json(s[k])}});
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump(2) + "\n";
}

std::string series_to_json(const TropSeries& s, const Backend& b) {
  Json j;
  j["field"] = backend_to_json(b);
  j["kind"] = "tropical";
  j["truncation"] = s.truncation();
  j["exact"] = s.exact_tail();
  Json coeffs = Json::array();
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (s[k].is_finite()) coeffs.push_back({{"n", k}, {"val", to_string(s[k])}});
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump(2) + "\n";
}

std::string report_to_json(const FTReport& r) { return report_json(r).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<FTReport>& reports) {
  Json j;
  j["schema"] = FTReport::schema;
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_json(r));
  j["reports"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string report_json_to_text(std::string_view json_text) {
  const Json j = parse_json(json_text);
  std::ostringstream out;
  if (j.contains("reports")) {
    for (const auto& r : j.at("reports")) render_report(out, r);
  } else {
    render_report(out, j);
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_input("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad_input("cannot write " + path);
  out << content;
  if (!out) bad_input("error writing " + path);
}

}  // namespace tropdiff
