#include "tropdiff/radius.hpp"

#include "tropdiff/error.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace tropdiff {

RadiusRule RadiusRule::exp_family(unsigned long p) {
  RadiusRule r;
  r.stride = p;
  r.slope = Rational(1, static_cast<long>(p - 1));
  r.offset = 0;
  r.factorial_correction = true;
  r.prime = p;
  return r;
}

RadiusRule RadiusRule::polynomial() {
  RadiusRule r;
  r.finite_support = true;
  return r;
}

TropNum RadiusRule::coefficient(unsigned long n) const {
  if (finite_support || stride == 0 || n % stride != 0) return TropNum::inf();
  const unsigned long m = n / stride;
  Rational a = slope * Rational(static_cast<long>(m)) + offset;
  if (factorial_correction) a -= factorial_val(m, prime);
  return TropNum(a);
}

const Rational& LogRadius::value() const {
  if (kind_ != Kind::Finite) throw Error(ErrorCode::InvalidArgument, "infinite log radius");
  return value_;
}

std::string to_string(const LogRadius& l) {
  if (l.is_plus_infinity()) return "inf";
  if (l.is_minus_infinity()) return "-inf";
  return to_string(l.value());
}

RadiusEstimate radius_from_rule(const RadiusRule& rule) {
  RadiusEstimate est;
  est.kind = RadiusKind::ExactFromRule;
  if (rule.finite_support) {
    est.log_radius = LogRadius::plus_infinity();
    return est;
  }
  if (rule.stride == 0) throw Error(ErrorCode::InvalidRule, "stride must be positive");
  if (rule.factorial_correction && !is_prime(rule.prime)) {
    throw Error(ErrorCode::InvalidRule, "factorial correction needs a prime");
  }
  Rational slope = rule.slope;
  if (rule.factorial_correction) slope -= Rational(1, static_cast<long>(rule.prime - 1));
  est.log_radius = LogRadius::finite(Rational(slope / static_cast<long>(rule.stride)));
  return est;
}

RadiusEstimate radius_window_estimate(const TropSeries& a, std::size_t window_start) {
  if (window_start >= a.length()) {
    throw Error(ErrorCode::InvalidWindow, "window start " + std::to_string(window_start) +
                                              " beyond truncation " + std::to_string(a.truncation()));
  }
  RadiusEstimate est;
  est.kind = RadiusKind::WindowLowerBound;
  est.window = std::pair(window_start, a.length() - 1);
  std::optional<Rational> best;
  for (std::size_t i = std::max<std::size_t>(window_start, 1); i < a.length(); ++i) {
    if (a[i].is_inf()) continue;
    Rational q = a[i].value() / Rational(static_cast<long>(i));
    if (!best || q < *best) best = q;
  }
  if (!best) {
    est.empty_window = true;
    est.log_radius = LogRadius::plus_infinity();
    return est;
  }
  est.log_radius = LogRadius::finite(*best);
  return est;
}

namespace {

// Prime factorization of a positive rational by trial division; nullopt if a
// cofactor above the bound remains.
std::optional<std::map<unsigned long, long>> factor(const Rational& q) {
  std::map<unsigned long, long> out;
  auto split = [&](Integer n, long sign) -> bool {
    for (unsigned long d = 2; d <= 1000000 && n > 1; ++d) {
      while (n % d == 0) {
        n /= d;
        out[d] += sign;
      }
    }
    return n == 1;
  };
  if (!split(q.get_num(), 1) || !split(q.get_den(), -1)) return std::nullopt;
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

// Exact log_c(c') when c' = c^q for rational q.
std::optional<Rational> exact_log(const Rational& c, const Rational& c_other) {
  const auto fc = factor(c);
  const auto fo = factor(c_other);
  if (!fc || !fo || fc->empty()) return std::nullopt;
  std::optional<Rational> ratio;
  for (const auto& [p, e] : *fc) {
    const auto it = fo->find(p);
    const Rational r = tropdiff::ratio(it == fo->end() ? 0 : it->second, e);
    if (ratio && *ratio != r) return std::nullopt;
    ratio = r;
  }
  for (const auto& [p, e] : *fo) {
    if (!fc->contains(p)) return std::nullopt;
  }
  return ratio;
}

}  // namespace

BaseChange base_change(const RadiusEstimate& est, const Rational& c, const Rational& c_other) {
  if (c <= 1 || c_other <= 1) throw Error(ErrorCode::BadBase, "bases must exceed 1");
  BaseChange out;
  out.base = c;
  out.other_base = c_other;
  out.log_radius = est.log_radius;
  out.log_base_ratio = exact_log(c, c_other);
  out.log_base_ratio_approx = std::log(c_other.get_d()) / std::log(c.get_d());
  out.exponent_approx = 1.0 / out.log_base_ratio_approx;
  if (out.log_base_ratio) out.exponent = Rational(1 / *out.log_base_ratio);
  return out;
}

double radius_value(const LogRadius& l, const Rational& base) {
  if (l.is_plus_infinity()) return std::numeric_limits<double>::infinity();
  if (l.is_minus_infinity()) return 0.0;
  return std::pow(base.get_d(), l.value().get_d());
}

RadiusEstimate classical_radius(const PowerSeries& a, std::size_t window_start,
                                const std::optional<RadiusRule>& rule) {
  if (a.backend().kind() == BackendKind::RationalTrivial) {
    throw Error(ErrorCode::TrivialBackend, "radius is undefined for the trivial valuation");
  }
  if (rule) return radius_from_rule(*rule);
  return radius_window_estimate(tropicalize_series(a), window_start);
}

}  // namespace tropdiff
