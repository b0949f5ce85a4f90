#pragma once

// Ritt differential polynomials with truncated power-series coefficients,
// their tropicalizations, and evaluation in both worlds.

#include "tropdiff/field.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/tropical.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropdiff {

/// The differential variable x_index^(order); index is 0-based.
struct Var {
  unsigned index = 0;
  unsigned order = 0;
  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sparse exponent matrix lambda: (i, j) -> lambda_{i,j} > 0.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  static ExponentMatrix variable(Var v, unsigned exponent = 1);

  const std::map<Var, unsigned>& entries() const { return entries_; }
  unsigned exponent(Var v) const;
  unsigned degree() const;
  /// Highest derivative order present; nullopt for the constant monomial.
  std::optional<unsigned> order() const;
  bool is_constant() const { return entries_.empty(); }

  friend ExponentMatrix operator*(const ExponentMatrix& a, const ExponentMatrix& b);
  /// Lowers lambda_v by one; v must be present.
  ExponentMatrix without_one(Var v) const;
  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

 private:
  std::map<Var, unsigned> entries_;
};

/// Deterministic print order: higher total degree first, then the monomial
/// whose largest variable (higher order, then lower index) is larger.
struct MonomialOrder {
  bool operator()(const ExponentMatrix& a, const ExponentMatrix& b) const;
};

/// Polynomial with coefficients in C keyed by exponent matrices.
template <class C>
struct Poly {
  unsigned nvars = 1;
  std::map<ExponentMatrix, C, MonomialOrder> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
  }
};

/// trop_v(f): coefficients in T2.
using TropDiffPoly = Poly<Trop2>;
/// Polynomials over T in the x_i^(j) with the differential relations forgotten.
using TropPoly1 = Poly<TropNum>;
/// Non-differential polynomial over K, e.g. F_{l,r}.
using ConstPoly = Poly<FieldElem>;

/// Element of K[[t]]{x_1..x_n}; every coefficient shares one window length
/// and zero coefficients are never stored.
class DiffPoly {
 public:
  DiffPoly(const Backend& b, unsigned nvars, std::size_t coeff_length);

  static DiffPoly constant(const PowerSeries& c, unsigned nvars);
  static DiffPoly variable(const Backend& b, unsigned nvars, std::size_t coeff_length, Var v);

  const Backend& backend() const { return backend_; }
  unsigned nvars() const { return nvars_; }
  std::size_t coeff_length() const { return length_; }
  const std::map<ExponentMatrix, PowerSeries, MonomialOrder>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest derivative order of any variable; 0 if none occur.
  unsigned order() const;

  /// Adds c x^lambda to the polynomial, collecting like terms.
  void add_term(const ExponentMatrix& lambda, const PowerSeries& c);

  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly operator-() const;
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  Backend backend_;
  unsigned nvars_;
  std::size_t length_;
  std::map<ExponentMatrix, PowerSeries, MonomialOrder> terms_;
};

/// Result of plugging a point into a tropical polynomial.
template <TropicalScalar V>
struct EvalReport {
  V value;
  std::vector<ExponentMatrix> attainment;  // monomials attaining a finite minimum
  bool vanishes = false;
  bool truncation_limited = false;
};

/// d(A x^lambda) = A' x^lambda + A sum lambda_{i,j} x_i^(j+1) x^(lambda - e_{i,j}).
/// The coefficient window shrinks by one; TruncationExhausted below length 2.
DiffPoly diff(const DiffPoly& f);

/// Applies the rank-2 valuation to every coefficient.
TropDiffPoly tropicalize_poly(const DiffPoly& f);
/// Trivially-valued (Grigoriev) tropicalization: coefficient (t-order, 0).
TropDiffPoly tropicalize_poly_grigoriev(const DiffPoly& f);
/// Coefficientwise sigma0, carrying T2 coefficients to (alpha, 0).
TropDiffPoly sigma0_poly(const TropDiffPoly& g);

/// f(a) with d^j a_i substituted for x_i^(j); result window
/// min(coeff_length, len(a) - order(f)).
PowerSeries eval_classical(const DiffPoly& f, std::span<const PowerSeries> a);

/// Caches Phi(d_v^j S_i) for one evaluation context.
class LeadingTermTable {
 public:
  explicit LeadingTermTable(std::span<const TropSeries> point);
  const LeadingTerm& at(Var v);

 private:
  std::span<const TropSeries> point_;
  std::map<Var, LeadingTerm> cache_;
};

/// Plugs Phi(d^j S_i) into every monomial and reports the minimum and where
/// it is attained.
EvalReport<Trop2> eval_tropical(const TropDiffPoly& g, std::span<const TropSeries> point);
/// Ordinary min-plus evaluation; point[i][j] is the value of x_i^(j).
EvalReport<TropNum> eval_trop1(const TropPoly1& g, std::span<const std::vector<TropNum>> point);

/// (d^r f)|_{t=0}.
ConstPoly f_lr(const DiffPoly& f, unsigned r);
TropPoly1 tropicalize_const(const ConstPoly& g);
FieldElem eval_const(const ConstPoly& g, std::span<const std::vector<FieldElem>> point,
                     const Backend& b);

/// {d^k f}_{k <= m}.
std::vector<DiffPoly> derived_system(const DiffPoly& f, unsigned m);
std::vector<TropDiffPoly> tropicalize_system(std::span<const DiffPoly> system);

struct SolutionReport {
  std::vector<EvalReport<Trop2>> equations;
  bool all_vanish = true;
  bool truncation_limited = false;
  std::optional<std::size_t> first_failure;
};

SolutionReport is_tropical_solution(std::span<const TropDiffPoly> system,
                                    std::span<const TropSeries> point);

}  // namespace tropdiff
