#include "tropdiff/cli.hpp"

#include "tropdiff/error.hpp"
#include "tropdiff/initial.hpp"
#include "tropdiff/io.hpp"
#include "tropdiff/parser.hpp"
#include "tropdiff/radius.hpp"
#include "tropdiff/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace tropdiff::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240917;
constexpr unsigned long kFallbackPrime = 3;

struct Options {
  std::string system_path;
  std::string candidate_path;
  std::string series_path;
  std::string out_path;
  std::string format = "text";
  std::optional<unsigned> order;
  std::optional<std::size_t> truncation;
  bool grigoriev = false;
  bool strict = false;

  // radius
  std::optional<std::string> base;
  std::optional<std::size_t> window_start;
  std::optional<std::string> rule;

  // solve-linear
  std::string field;
  std::string g;
  std::string c0 = "1";
  bool tropical_output = false;

  // verify-ft, selftest
  std::vector<unsigned long> primes;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 50;
};

unsigned long default_prime(const Backend& b) {
  return b.kind() == BackendKind::RationalTrivial ? kFallbackPrime : b.prime();
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
  }
}

std::vector<TropSeries> load_point(const Options& o, const SystemFile& sys) {
  const SeriesFile cand = parse_series(read_file(o.candidate_path));
  if (!(cand.backend == sys.backend)) {
    throw Error(ErrorCode::BackendMismatch,
                "candidate field " + cand.backend.name() + " differs from system field " + sys.backend.name());
  }
  std::vector<TropSeries> point = cand.as_tropical();
  if (point.size() != sys.nvars) {
    throw Error(ErrorCode::MissingVariable, "candidate has " + std::to_string(point.size()) +
                                                " series for " + std::to_string(sys.nvars) + " variables");
  }
  if (o.grigoriev) {
    for (auto& s : point) s = sigma_to_grigoriev(s).to_trop_series(s.exact_tail());
  }
  return point;
}

unsigned derivation_order(const Options& o, const SystemFile& sys) {
  if (o.order) return *o.order;
  if (sys.order) return *sys.order;
  return static_cast<unsigned>(3 * default_prime(sys.backend));
}

TropDiffPoly tropicalize_with(const Options& o, const DiffPoly& f) {
  return o.grigoriev ? tropicalize_poly_grigoriev(f) : tropicalize_poly(f);
}

int cmd_tropicalize(const Options& o, std::ostream& out) {
  const SystemFile sys = parse_system(read_file(o.system_path));
  const unsigned m = o.order.value_or(0);
  std::ostringstream text;
  Json doc;
  doc["field"] = sys.backend.name();
  doc["mode"] = o.grigoriev ? "grigoriev" : "valued";
  Json list = Json::array();
  for (std::size_t l = 0; l < sys.polynomials.size(); ++l) {
    const auto family = derived_system(sys.polynomials[l], m);
    Json entry;
    entry["source"] = sys.sources[l];
    Json orders = Json::array();
    for (unsigned k = 0; k <= m; ++k) {
      const std::string printed = print_poly(tropicalize_with(o, family[k]));
      orders.push_back(printed);
      text << "trop(";
      if (k > 0) text << "d^" << k << " ";
      text << "f" << l + 1 << ") = " << printed << "\n";
    }
    entry["tropical"] = std::move(orders);
    list.push_back(std::move(entry));
  }
  doc["polynomials"] = std::move(list);
  emit(o, out, o.format == "json" ? doc.dump(2) + "\n" : text.str());
  return Success;
}

int cmd_check(const Options& o, std::ostream& out) {
  const SystemFile sys = parse_system(read_file(o.system_path));
  const std::vector<TropSeries> point = load_point(o, sys);
  const unsigned m = derivation_order(o, sys);
  std::ostringstream text;
  Json rows = Json::array();
  bool all = true;
  bool limited = false;
  std::optional<std::pair<std::size_t, unsigned>> failure;
  for (std::size_t l = 0; l < sys.polynomials.size(); ++l) {
    std::vector<TropDiffPoly> system;
    for (const auto& g : derived_system(sys.polynomials[l], m)) system.push_back(tropicalize_with(o, g));
    const SolutionReport r = is_tropical_solution(system, point);
    limited |= r.truncation_limited;
    for (unsigned k = 0; k < r.equations.size(); ++k) {
      const auto& e = r.equations[k];
      text << "f" << l + 1 << " order " << k << ": min " << to_string(e.value) << " attained "
           << e.attainment.size() << (e.vanishes ? ", vanishes" : ", does not vanish")
           << (e.truncation_limited ? " [truncation-limited]" : "") << "\n";
      rows.push_back({{"generator", l + 1},
                      {"order", k},
                      {"value", to_string(e.value)},
                      {"attained", e.attainment.size()},
                      {"vanishes", e.vanishes},
                      {"truncation_limited", e.truncation_limited}});
    }
    all &= r.all_vanish;
    if (!r.all_vanish && !failure) failure = std::pair(l + 1, static_cast<unsigned>(*r.first_failure));
  }
  if (failure) {
    text << "not a tropical solution: generator " << failure->first << " fails at order " << failure->second
         << " (equation index " << failure->second << ")\n";
  } else {
    text << "tropical solution up to order " << m << " (N = " << sys.truncation << ")"
         << (limited ? ", some leading terms truncation-limited" : "") << "\n";
  }
  Json doc;
  doc["field"] = sys.backend.name();
  doc["truncation"] = sys.truncation;
  doc["order"] = m;
  doc["solution"] = all;
  doc["truncation_limited"] = limited;
  doc["failure"] = failure ? Json{{"generator", failure->first}, {"order", failure->second}} : Json(nullptr);
  doc["equations"] = std::move(rows);
  emit(o, out, o.format == "json" ? doc.dump(2) + "\n" : text.str());
  return all ? Success : MathFailure;
}

int cmd_initial(const Options& o, std::ostream& out) {
  const SystemFile sys = parse_system(read_file(o.system_path));
  const std::vector<TropSeries> point = load_point(o, sys);
  std::ostringstream text;
  Json doc;
  doc["field"] = sys.backend.name();
  Json forms = Json::array();
  for (std::size_t l = 0; l < sys.polynomials.size(); ++l) {
    const InitialForm in = initial_form(sys.polynomials[l], point, o.strict);
    const std::string printed = print_poly(in.form);
    text << "in(f" << l + 1 << ") = " << printed << (in.truncation_limited ? " [truncation-limited]" : "")
         << "\n";
    forms.push_back({{"source", sys.sources[l]}, {"initial_form", printed},
                     {"truncation_limited", in.truncation_limited}});
  }
  doc["initial_forms"] = std::move(forms);
  int status = Success;
  if (o.order) {
    const MonomialCheck mc = initial_system_monomial_check(sys.polynomials, point, *o.order);
    text << (mc.monomial_free ? "no monomial initial form" : "monomial initial form found") << " up to order "
         << mc.order << "\n";
    Json witnesses = Json::array();
    for (const auto& w : mc.witnesses) {
      text << "  in(d^" << w.order << " f" << w.generator + 1 << ") = " << print_poly(w.form) << "\n";
      witnesses.push_back({{"generator", w.generator + 1}, {"order", w.order}, {"form", print_poly(w.form)}});
    }
    doc["monomial_free"] = mc.monomial_free;
    doc["order"] = mc.order;
    doc["witnesses"] = std::move(witnesses);
    if (!mc.monomial_free) status = MathFailure;
  }
  emit(o, out, o.format == "json" ? doc.dump(2) + "\n" : text.str());
  return status;
}

// "p,auto" or "P,auto" for the exp family; otherwise "d,q,offset,corr".
RadiusRule parse_rule(const std::string& text, std::optional<unsigned long> prime) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  auto need_prime = [&]() {
    if (!prime) throw Error(ErrorCode::InvalidRule, "rule needs a prime: pass --p or a p-adic series");
    return *prime;
  };
  if (parts.size() == 2 && parts[1] == "auto") {
    if (parts[0] == "p") return RadiusRule::exp_family(need_prime());
    const unsigned long p = std::stoul(parts[0]);
    if (!is_prime(p)) throw Error(ErrorCode::InvalidRule, parts[0] + " is not prime");
    return RadiusRule::exp_family(p);
  }
  if (parts.size() != 4) throw Error(ErrorCode::InvalidRule, "rule must be d,q,offset,corr or p,auto");
  RadiusRule r;
  try {
    r.stride = std::stoul(parts[0]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidRule, "bad stride '" + parts[0] + "'");
  }
  r.slope = parse_rational(parts[1]);
  r.offset = parse_rational(parts[2]);
  if (parts[3] == "1" || parts[3] == "on") {
    r.factorial_correction = true;
    r.prime = need_prime();
  } else if (parts[3] != "0" && parts[3] != "off") {
    throw Error(ErrorCode::InvalidRule, "corr must be 0/1 or off/on");
  }
  return r;
}

// c^L exactly when L is an integer, else "c^(L)".
std::string format_radius(const LogRadius& l, const Rational& c) {
  if (l.is_plus_infinity()) return "inf";
  if (l.is_minus_infinity()) return "0";
  const Rational& v = l.value();
  if (v.get_den() != 1) return to_string(c) + "^(" + to_string(v) + ")";
  if (!v.get_num().fits_slong_p()) return to_string(c) + "^(" + to_string(v) + ")";
  const long k = v.get_num().get_si();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), c.get_num().get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  mpz_pow_ui(den.get_mpz_t(), c.get_den().get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  Rational r = k < 0 ? Rational(den, num) : Rational(num, den);
  return to_string(r);
}

int cmd_radius(const Options& o, std::ostream& out) {
  std::optional<SeriesFile> file;
  if (!o.series_path.empty()) file = parse_series(read_file(o.series_path));
  if (!file && !o.rule) throw Error(ErrorCode::InvalidArgument, "radius needs --series or --rule");
  if (file && file->tropical_series.size() + file->classical.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "radius takes a single series");
  }
  std::optional<unsigned long> prime;
  if (!o.primes.empty()) prime = o.primes.front();
  if (!prime && file && file->backend.kind() != BackendKind::RationalTrivial) prime = file->backend.prime();
  if (file && !file->tropical && file->backend.kind() == BackendKind::RationalTrivial) {
    throw Error(ErrorCode::TrivialBackend, "radius is undefined for the trivial valuation");
  }
  Rational base;
  if (o.base) {
    base = parse_rational(*o.base);
  } else if (prime) {
    base = Rational(static_cast<long>(*prime));
  } else {
    throw Error(ErrorCode::BadBase, "no prime available; pass --base");
  }
  if (base <= 1) throw Error(ErrorCode::BadBase, "base must exceed 1");

  std::optional<TropSeries> series;
  if (file) series = file->as_tropical().front();
  std::ostringstream text;
  Json doc;
  doc["base"] = to_string(base);
  int status = Success;
  RadiusEstimate est;
  if (o.rule) {
    const RadiusRule rule = parse_rule(*o.rule, prime);
    est = radius_from_rule(rule);
    if (series) {
      for (std::size_t k = 0; k < series->length(); ++k) {
        if (!((*series)[k] == rule.coefficient(k))) {
          text << "rule disagrees with the series at a_" << k << ": " << to_string((*series)[k])
               << " vs " << to_string(rule.coefficient(k)) << "\n";
          doc["rule_mismatch"] = k;
          status = MathFailure;
          break;
        }
      }
    }
    text << "log_r = " << to_string(est.log_radius) << ", r = " << format_radius(est.log_radius, base)
         << " (base " << to_string(base) << ")\n";
    doc["kind"] = "exact-from-rule";
  } else {
    const std::size_t start = o.window_start.value_or(series->length() / 2);
    est = radius_window_estimate(*series, start);
    const std::string window =
        "[" + std::to_string(est.window->first) + ", " + std::to_string(est.window->second) + "]";
    if (est.empty_window) {
      text << "log_r = inf, r = inf (base " << to_string(base) << "); window " << window
           << " holds no finite coefficient\n";
    } else {
      text << "log_r ~ " << to_string(est.log_radius) << ", r ~ " << format_radius(est.log_radius, base)
           << " (base " << to_string(base) << "; window estimate over " << window << ")\n";
    }
    doc["kind"] = "window-estimate";
    doc["window"] = {est.window->first, est.window->second};
    doc["empty_window"] = est.empty_window;
  }
  doc["log_r"] = to_string(est.log_radius);
  doc["r"] = format_radius(est.log_radius, base);
  emit(o, out, o.format == "json" ? doc.dump(2) + "\n" : text.str());
  return status;
}

PowerSeries constant_series(const DiffPoly& f, const Backend& b, std::size_t len, const char* what) {
  if (f.is_zero()) return PowerSeries::zero(b, len);
  if (f.terms().size() != 1 || !f.terms().begin()->first.is_constant()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not involve x");
  }
  return f.terms().begin()->second;
}

int cmd_solve_linear(const Options& o, std::ostream& out) {
  const unsigned long p0 = o.primes.empty() ? kFallbackPrime : o.primes.front();
  const Backend b = o.field.empty() ? Backend::eisenstein(p0) : parse_backend_spec(o.field);
  const std::size_t n = o.truncation.value_or(6 * default_prime(b));
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "--N must be at least 1");
  const PowerSeries g = constant_series(parse_poly(o.g, ParseContext{b, 1, n - 1}), b, n, "g");
  const PowerSeries c0 = constant_series(parse_poly(o.c0, ParseContext{b, 1, 0}), b, 1, "c0");
  const PowerSeries sol = solve_linear(LinearODE{g, c0[0], n});
  emit(o, out, o.tropical_output ? series_to_json(tropicalize_series(sol), b) : series_to_json(sol));
  return Success;
}

int cmd_verify_ft(const Options& o, std::ostream& out) {
  const unsigned long p = o.primes.empty() ? kFallbackPrime : o.primes.front();
  const std::size_t n = o.truncation.value_or(6 * p);
  const unsigned m = o.order.value_or(static_cast<unsigned>(3 * p));
  FTReport rep = reproduce_exp_example(p, n, m);
  if (rep.passed) {
    FTReport suite = random_inclusion_suite(o.seed, o.count, p, n, m);
    rep.seed = suite.seed;
    for (auto& s : suite.sections) {
      s.name = "random-" + s.name;
      rep.add(std::move(s));
    }
  }
  const std::string json = report_to_json(rep);
  if (!o.out_path.empty()) write_file(o.out_path, json);
  out << (o.format == "json" ? json : report_json_to_text(json));
  return rep.passed ? Success : MathFailure;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  const std::vector<unsigned long> primes = o.primes.empty() ? std::vector<unsigned long>{2, 3, 5} : o.primes;
  std::vector<FTReport> reports;
  bool passed = true;
  for (unsigned long p : primes) {
    reports.push_back(reproduce_exp_example(p, o.truncation.value_or(6 * p),
                                            o.order.value_or(static_cast<unsigned>(3 * p))));
    passed &= reports.back().passed;
  }
  const std::string json = reports_to_json(reports);
  if (!o.out_path.empty()) write_file(o.out_path, json);
  out << (o.format == "json" ? json : report_json_to_text(json));
  return passed ? Success : MathFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tropical differential algebra over valued power-series rings", "tropdiff"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out_path, "Write the output to this file");
  };

  auto* trop = app.add_subcommand("tropicalize", "Tropicalize the polynomials of a system file");
  trop->add_option("--system", o.system_path, "System file")->required();
  trop->add_option("--order", o.order, "Also tropicalize d^k f for k <= order");
  trop->add_flag("--grigoriev", o.grigoriev, "Trivially valued (Boolean) tropicalization");
  add_format(trop);

  auto* check = app.add_subcommand("check", "Check a candidate against the derived tropical system");
  check->add_option("--system", o.system_path, "System file")->required();
  check->add_option("--candidate", o.candidate_path, "Series file, one series per variable")->required();
  check->add_option("--order", o.order, "Derivation order m (default: system file, else 3p)");
  check->add_flag("--grigoriev", o.grigoriev, "Check in the Boolean (Grigoriev) setting");
  add_format(check);

  auto* initial = app.add_subcommand("initial", "Initial forms over the residue field");
  initial->add_option("--system", o.system_path, "System file")->required();
  initial->add_option("--candidate", o.candidate_path, "Series file, one series per variable")->required();
  initial->add_option("--order", o.order, "Run the monomial check on d^k f, k <= order");
  initial->add_flag("--strict", o.strict, "Fail when a leading term lies beyond the window");
  add_format(initial);

  auto* radius = app.add_subcommand("radius", "Tropical radius of convergence");
  radius->add_option("--series", o.series_path, "Series file");
  radius->add_option("--base", o.base, "Base c > 1 (default p)");
  radius->add_option("--window-start", o.window_start, "First index of the estimation window");
  radius->add_option("--rule", o.rule, "Coefficient law d,q,offset,corr or p,auto");
  radius->add_option("--p", o.primes, "Prime for the rule")->expected(1);
  add_format(radius);

  auto* solve = app.add_subcommand("solve-linear", "Solve x' = g x by the power-series recurrence");
  solve->add_option("--g", o.g, "Coefficient g, e.g. 3*zeta*t^2")->required();
  solve->add_option("--c0", o.c0, "Initial value x(0)");
  solve->add_option("--field", o.field, "trivial, padic:P or eisenstein:P (default eisenstein:p)");
  solve->add_option("--p", o.primes, "Prime (default 3)")->expected(1);
  solve->add_option("--N", o.truncation, "Truncation N (default 6p)");
  solve->add_flag("--tropical", o.tropical_output, "Emit the tropicalized series");
  solve->add_option("--out", o.out_path, "Write the series to this file");

  auto* verify = app.add_subcommand("verify-ft", "Inclusion checks and the exp(zeta t^p) reproduction");
  verify->add_option("--p", o.primes, "Prime (default 3)")->expected(1);
  verify->add_option("--N", o.truncation, "Truncation N (default 6p)");
  verify->add_option("--m", o.order, "Derivation order m (default 3p)");
  verify->add_option("--seed", o.seed, "Seed for random instances")->envname("TROPDIFF_SEED");
  verify->add_option("--count", o.count, "Number of random linear ODEs");
  add_format(verify);

  auto* selftest = app.add_subcommand("selftest", "Reproduce the exp(zeta t^p) example for each prime");
  selftest->add_option("--p", o.primes, "Primes (default 2 3 5)");
  selftest->add_option("--N", o.truncation, "Truncation N (default 6p)");
  selftest->add_option("--m", o.order, "Derivation order m (default 3p)");
  add_format(selftest);

  std::vector<const char*> argv{"tropdiff"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Success : UsageError;
  }

  try {
    if (*trop) return cmd_tropicalize(o, out);
    if (*check) return cmd_check(o, out);
    if (*initial) return cmd_initial(o, out);
    if (*radius) return cmd_radius(o, out);
    if (*solve) return cmd_solve_linear(o, out);
    if (*verify) return cmd_verify_ft(o, out);
    if (*selftest) return cmd_selftest(o, out);
  } catch (const Error& e) {
    err << "tropdiff: " << e.what() << "\n";
    return UsageError;
  } catch (const std::exception& e) {
    err << "tropdiff: " << e.what() << "\n";
    return UsageError;
  }
  return UsageError;
}

}  // namespace tropdiff::cli
