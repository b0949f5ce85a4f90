#pragma once

// Exact valued coefficient fields: Q with the trivial or p-adic valuation and
// the totally ramified extension Q(zeta), zeta^(p-1) = -p. Each carries a
// uniformizer section, a residue field and angular components.

#include "tropdiff/rational.hpp"
#include "tropdiff/tropical.hpp"

#include <string>
#include <vector>

namespace tropdiff {

enum class BackendKind { RationalTrivial, RationalPadic, Eisenstein };

class Backend {
 public:
  static Backend trivial();
  static Backend padic(unsigned long p);
  static Backend eisenstein(unsigned long p);

  BackendKind kind() const { return kind_; }
  /// Residue characteristic; 0 for the trivial backend.
  unsigned long prime() const { return p_; }
  /// Number of rational coordinates of an element (p - 1 for Eisenstein).
  std::size_t dimension() const;
  /// Ramification index e: the value group is (1/e)Z.
  long ramification() const;
  bool has_zeta() const { return kind_ == BackendKind::Eisenstein; }
  /// Valuation on N driving d_v: p-adic unless the backend is trivial.
  NatValuation nat_valuation() const;

  std::string name() const;
  friend bool operator==(const Backend&, const Backend&) = default;

 private:
  Backend(BackendKind kind, unsigned long p) : kind_(kind), p_(p) {}

  BackendKind kind_;
  unsigned long p_;
};

/// Exact element of a backend field. Eisenstein elements are coordinate
/// vectors (c_0, ..., c_{p-2}) for sum c_i zeta^i.
class FieldElem {
 public:
  static FieldElem zero(const Backend& b);
  static FieldElem one(const Backend& b);
  static FieldElem from_rational(const Backend& b, Rational r);
  static FieldElem from_coeffs(const Backend& b, std::vector<Rational> coeffs);
  /// The generator zeta; ZetaUnavailable outside the Eisenstein backend.
  static FieldElem zeta(const Backend& b);
  /// zeta for Eisenstein, p for p-adic; TrivialBackend otherwise.
  static FieldElem uniformizer(const Backend& b);

  const Backend& backend() const { return backend_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  friend FieldElem operator*(const FieldElem& a, const Rational& r);

  FieldElem inverse() const;
  FieldElem pow(long k) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);

 private:
  FieldElem(Backend b, std::vector<Rational> c) : backend_(b), coeffs_(std::move(c)) {}

  Backend backend_;
  std::vector<Rational> coeffs_;
};

std::string to_string(const FieldElem& x);

TropNum field_val(const FieldElem& x);

/// Image of the uniformizer section on one weight: pi^(beta*e) t^alpha,
/// with t carried as an exponent.
struct SectionMonomial {
  long t_exponent = 0;
  FieldElem scalar;
};

SectionMonomial section_phi(const Trop2& w, const Backend& b);

/// Element of the residue field: F_p for p-adic/Eisenstein, Q for trivial.
class ResidueElem {
 public:
  ResidueElem(unsigned long characteristic, Rational value);

  static ResidueElem zero(unsigned long characteristic) { return {characteristic, Rational(0)}; }
  static ResidueElem one(unsigned long characteristic) { return {characteristic, Rational(1)}; }

  unsigned long characteristic() const { return char_; }
  /// Canonical representative in [0, p) for p > 0.
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend ResidueElem operator+(const ResidueElem& a, const ResidueElem& b);
  friend ResidueElem operator-(const ResidueElem& a, const ResidueElem& b);
  friend ResidueElem operator*(const ResidueElem& a, const ResidueElem& b);
  friend ResidueElem operator/(const ResidueElem& a, const ResidueElem& b);
  ResidueElem operator-() const;
  ResidueElem& operator+=(const ResidueElem& o) { return *this = *this + o; }
  friend bool operator==(const ResidueElem& a, const ResidueElem& b);

 private:
  unsigned long char_;
  Rational value_;
};

std::string to_string(const ResidueElem& x);

/// Residue class of x; NegativeValuation when v(x) < 0.
ResidueElem residue(const FieldElem& x);
/// Residue of x * phi(-v(x)); ZeroInput when x = 0.
ResidueElem angular_component(const FieldElem& x);

}  // namespace tropdiff
