#pragma once

// Min-plus semirings T = Q u {inf} and T2 = Q^2 u {inf} (lexicographic min),
// tropical vanishing, and valuations on the naturals.

#include "tropdiff/rational.hpp"

#include <compare>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tropdiff {

/// Element of T. Default-constructed value is INF, the additive identity.
/// `+` is the tropical sum (min), `*` the tropical product (rational +).
class TropNum {
 public:
  TropNum() = default;
  TropNum(Rational value) : value_(std::move(value)) {}
  TropNum(long value) : value_(Rational(value)) {}

  static TropNum inf() { return TropNum(); }
  static TropNum zero() { return TropNum(0L); }  // multiplicative identity

  bool is_inf() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const;

  friend TropNum operator+(const TropNum& a, const TropNum& b);
  friend TropNum operator*(const TropNum& a, const TropNum& b);
  TropNum& operator+=(const TropNum& o) { return *this = *this + o; }
  TropNum& operator*=(const TropNum& o) { return *this = *this * o; }

  friend bool operator==(const TropNum& a, const TropNum& b);
  /// Rational order with INF greatest; the min of `+` is taken w.r.t. this order.
  friend std::strong_ordering operator<=>(const TropNum& a, const TropNum& b);

 private:
  std::optional<Rational> value_;
};

/// Element of T2: pairs (alpha, beta) under lexicographic min, componentwise +.
class Trop2 {
 public:
  Trop2() = default;
  Trop2(Rational first, Rational second)
      : value_(std::pair<Rational, Rational>(std::move(first), std::move(second))) {}

  static Trop2 inf() { return Trop2(); }
  static Trop2 zero() { return Trop2(Rational(0), Rational(0)); }

  bool is_inf() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& first() const;
  const Rational& second() const;

  friend Trop2 operator+(const Trop2& a, const Trop2& b);
  friend Trop2 operator*(const Trop2& a, const Trop2& b);
  Trop2& operator+=(const Trop2& o) { return *this = *this + o; }
  Trop2& operator*=(const Trop2& o) { return *this = *this * o; }

  friend bool operator==(const Trop2& a, const Trop2& b);
  friend std::strong_ordering operator<=>(const Trop2& a, const Trop2& b);

 private:
  std::optional<std::pair<Rational, Rational>> value_;
};

template <class T>
concept TropicalScalar = std::same_as<T, TropNum> || std::same_as<T, Trop2>;

/// k-fold tropical product of a with itself.
TropNum power(const TropNum& a, unsigned long k);
Trop2 power(const Trop2& a, unsigned long k);

/// Canonical order of an idempotent semiring: a <= b iff a + b = b.
template <TropicalScalar T>
bool preceq(const T& a, const T& b) {
  return a + b == b;
}

/// B is T restricted to {0, INF}.
inline bool is_boolean(const TropNum& a) { return a.is_inf() || a.value() == 0; }

std::string to_string(const TropNum& a);
std::string to_string(const Trop2& a);
/// Accepts "inf" or a rational string.
TropNum parse_tropnum(std::string_view text);

template <TropicalScalar T>
struct Vanishing {
  T sum;
  std::vector<std::size_t> attainment;  // indices attaining a finite minimum
  bool vanishes = false;
};

/// Min-twice-or-INF characterization, with the attaining indices.
template <TropicalScalar T>
Vanishing<T> tropically_vanishes(std::span<const T> addends) {
  Vanishing<T> out;
  for (const T& a : addends) out.sum += a;
  if (out.sum.is_inf()) {
    out.vanishes = true;
    return out;
  }
  for (std::size_t k = 0; k < addends.size(); ++k) {
    if (addends[k] == out.sum) out.attainment.push_back(k);
  }
  out.vanishes = out.attainment.size() >= 2;
  return out;
}

/// Literal definition: the sum is unchanged by removing any single addend.
template <TropicalScalar T>
bool vanishes_by_removal(std::span<const T> addends) {
  T total;
  for (const T& a : addends) total += a;
  for (std::size_t k = 0; k < addends.size(); ++k) {
    T partial;
    for (std::size_t i = 0; i < addends.size(); ++i) {
      if (i != k) partial += addends[i];
    }
    if (!(partial == total)) return false;
  }
  return true;
}

/// A valuation N -> T used by the tropical differential d_v:
/// trivial (every positive n maps to 0) or p-adic.
class NatValuation {
 public:
  static NatValuation trivial() { return NatValuation(); }
  static NatValuation padic(unsigned long p);

  bool is_trivial() const { return !prime_.has_value(); }
  unsigned long prime() const;

  /// v(n); v(0) = INF.
  TropNum operator()(unsigned long n) const;
  /// v(j!) as a rational (0 in trivial mode).
  Rational of_factorial(unsigned long j) const;

  std::string name() const;
  friend bool operator==(const NatValuation&, const NatValuation&) = default;

 private:
  std::optional<unsigned long> prime_;
};

}  // namespace tropdiff
