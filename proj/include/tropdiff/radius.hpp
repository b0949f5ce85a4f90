#pragma once

// Tropical radius of convergence, kept in log space:
//
//   r_c(A) = sup{ r : c^(-a_i) r^i -> 0 },  so  log_c r_c(A) = liminf a_i / i,
//
// since c^(-a_i) r^i = c^(i (log_c r - a_i / i)). The radius is c^L; L itself
// does not depend on c, only the real number c^L does.

#include "tropdiff/series.hpp"

#include <optional>
#include <string>
#include <utility>

namespace tropdiff {

/// Coefficient law a_n = INF unless n = stride * m, and
/// a_{stride*m} = slope * m + offset - [factorial_correction] v_p(m!).
/// `finite_support` describes a tropical polynomial (cofinitely INF).
struct RadiusRule {
  unsigned long stride = 1;
  Rational slope;
  Rational offset;
  bool factorial_correction = false;
  unsigned long prime = 0;
  bool finite_support = false;

  /// The law m/(p-1) - v_p(m!) on multiples of p, i.e. trop(exp(zeta t^p)).
  static RadiusRule exp_family(unsigned long p);
  static RadiusRule polynomial();

  TropNum coefficient(unsigned long n) const;
};

/// log_c r: a rational, +inf (r = infinity) or -inf (r = 0).
class LogRadius {
 public:
  static LogRadius finite(Rational v) { return LogRadius(Kind::Finite, std::move(v)); }
  static LogRadius plus_infinity() { return LogRadius(Kind::PlusInf, Rational(0)); }
  static LogRadius minus_infinity() { return LogRadius(Kind::MinusInf, Rational(0)); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_infinity() const { return kind_ == Kind::PlusInf; }
  bool is_minus_infinity() const { return kind_ == Kind::MinusInf; }
  const Rational& value() const;

  friend bool operator==(const LogRadius&, const LogRadius&) = default;

 private:
  enum class Kind { Finite, PlusInf, MinusInf };
  LogRadius(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Rational value_;
};

std::string to_string(const LogRadius& l);

enum class RadiusKind { ExactFromRule, WindowLowerBound };

struct RadiusEstimate {
  LogRadius log_radius = LogRadius::plus_infinity();
  RadiusKind kind = RadiusKind::ExactFromRule;
  std::optional<std::pair<std::size_t, std::size_t>> window;  // [start, end]
  /// The window held no finite coefficient; r = infinity is only a candidate.
  bool empty_window = false;
};

/// Exact liminf for a rule: (slope - [corr]/(p-1)) / stride. The digit-sum
/// part of Legendre's formula contributes 0 (s_p(p^k) = 1).
RadiusEstimate radius_from_rule(const RadiusRule& rule);

/// min over finite a_i, i >= max(window_start, 1), of a_i / i.
RadiusEstimate radius_window_estimate(const TropSeries& a, std::size_t window_start);

/// The same log radius expressed for two bases, with r_c = r_{c'}^(1/log_c c').
struct BaseChange {
  Rational base;
  Rational other_base;
  LogRadius log_radius = LogRadius::plus_infinity();  // log_c r_c = log_{c'} r_{c'}
  /// log_c(c'), exact when c and c' are rational powers of each other.
  std::optional<Rational> log_base_ratio;
  double log_base_ratio_approx = 0;
  /// r_c = r_{c'}^exponent, exponent = 1 / log_c(c').
  double exponent_approx = 0;
  std::optional<Rational> exponent;
};

BaseChange base_change(const RadiusEstimate& est, const Rational& c, const Rational& c_other);

/// c^L as a double, or +inf / 0.
double radius_value(const LogRadius& l, const Rational& base);

/// Radius of a classical series, via its tropicalization; TrivialBackend in
/// Grigoriev mode. With a rule, the rule's exact value is returned instead.
RadiusEstimate classical_radius(const PowerSeries& a, std::size_t window_start,
                                const std::optional<RadiusRule>& rule = std::nullopt);

}  // namespace tropdiff
