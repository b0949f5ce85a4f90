#pragma once

// Degree-truncated power series over a backend field and over T, the
// tropical differential d_v, leading-term maps, coefficientwise
// tropicalization, the Psi / Psi_trop bijections and the projection to
// Boolean (Grigoriev) series.
//
// Every series knows only a window of coefficients 0..length()-1. Products
// keep the shorter window; each differentiation drops one coefficient.

#include "tropdiff/field.hpp"
#include "tropdiff/tropical.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tropdiff {

class PowerSeries {
 public:
  PowerSeries(const Backend& b, std::vector<FieldElem> coeffs);

  static PowerSeries zero(const Backend& b, std::size_t length);
  static PowerSeries constant(const FieldElem& c, std::size_t length);
  /// c t^k; coefficients beyond the window are dropped.
  static PowerSeries monomial(const FieldElem& c, std::size_t k, std::size_t length);

  const Backend& backend() const { return backend_; }
  std::size_t length() const { return coeffs_.size(); }
  /// Truncation degree N = length - 1.
  long truncation() const { return static_cast<long>(coeffs_.size()) - 1; }
  const FieldElem& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Index of the first nonzero coefficient inside the window.
  std::optional<std::size_t> order() const;
  PowerSeries truncated(std::size_t length) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const FieldElem& c, const PowerSeries& a);
  PowerSeries operator-() const;
  friend bool operator==(const PowerSeries& a, const PowerSeries& b);

  /// d/dt; the result has one coefficient fewer.
  PowerSeries derivative() const;
  FieldElem at_zero() const;

 private:
  Backend backend_;
  std::vector<FieldElem> coeffs_;
};

/// Leading datum of a series. `truncation_limited` means the window held no
/// nonzero / finite coefficient, so INF may be an artifact of truncation.
struct LeadingTerm {
  Trop2 value;
  bool truncation_limited = false;
};

class TropSeries {
 public:
  TropSeries(std::vector<TropNum> coeffs, NatValuation nat_val, bool exact_tail = false);

  static TropSeries infinite(std::size_t length, NatValuation nat_val, bool exact_tail = false);

  std::size_t length() const { return coeffs_.size(); }
  long truncation() const { return static_cast<long>(coeffs_.size()) - 1; }
  const TropNum& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<TropNum>& coeffs() const { return coeffs_; }
  const NatValuation& nat_valuation() const { return nat_val_; }
  /// True when every coefficient beyond the window is known to be INF.
  bool exact_tail() const { return exact_tail_; }
  bool is_boolean() const;

  /// Coefficientwise min.
  friend TropSeries operator+(const TropSeries& a, const TropSeries& b);
  /// Min-plus convolution.
  friend TropSeries operator*(const TropSeries& a, const TropSeries& b);
  friend TropSeries operator*(const TropNum& c, const TropSeries& a);
  friend bool operator==(const TropSeries& a, const TropSeries& b);

 private:
  std::vector<TropNum> coeffs_;
  NatValuation nat_val_;
  bool exact_tail_;
};

/// Series over B: coefficient 0 on the support, INF elsewhere.
struct BoolSeries {
  std::size_t length = 0;
  std::vector<std::size_t> support;  // sorted

  TropSeries to_trop_series(bool exact_tail = false) const;
  friend bool operator==(const BoolSeries&, const BoolSeries&) = default;
};

/// d_v(t^n) = v(n) t^(n-1), extended additively.
TropSeries trop_diff(const TropSeries& s);
TropSeries trop_diff(const TropSeries& s, unsigned long times);

/// (n0, a_{n0}) for the first finite coefficient.
LeadingTerm phi_leading(const TropSeries& s);

/// Coefficientwise valuation; d_v uses the backend's valuation on N.
TropSeries tropicalize_series(const PowerSeries& a);

/// (order, v_K(leading coefficient)).
LeadingTerm rank2_val(const PowerSeries& a);

/// a -> sum a_j t^j / j!.
PowerSeries psi(std::span<const FieldElem> a, const Backend& b);
std::vector<FieldElem> psi_inverse(const PowerSeries& s);

/// (b_j) -> sum (b_j - v(j!)) t^j.
TropSeries psi_trop(std::span<const TropNum> b, const NatValuation& nat_val);
/// b_j = c_j + v(j!), i.e. the constant term of d_v^j S.
std::vector<TropNum> psi_trop_inverse(const TropSeries& s);

BoolSeries sigma_to_grigoriev(const TropSeries& s);
TropNum sigma0(const Trop2& w);

}  // namespace tropdiff
