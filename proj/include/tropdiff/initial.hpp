#pragma once

// Initial forms in_S(f) over the residue field and the monomial test on a
// derived family {d^k f_l}.

#include "tropdiff/diffpoly.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tropdiff {

using ResiduePoly = Poly<ResidueElem>;

ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b);

/// Exactly one term; the zero polynomial is not a monomial.
bool is_monomial(const ResiduePoly& g);

struct InitialForm {
  ResiduePoly form;
  /// Some Phi(d^j S_i) was INF only because its window was all INF.
  bool truncation_limited = false;
};

/// in_S(f): with w_lambda = v(A_lambda) * prod Phi(d^j S_i)^lambda_{i,j},
/// keeps the monomials attaining min w_lambda, each with coefficient
/// ac(leading coefficient of A_lambda); 0 when the minimum is INF.
///
/// Weights are checked against the value group (NonIntegralExponent). With
/// `strict`, a truncation-limited answer raises TruncationAmbiguous.
InitialForm initial_form(const DiffPoly& f, std::span<const TropSeries> point, bool strict = false);

struct MonomialWitness {
  std::size_t generator = 0;
  unsigned order = 0;
  ResiduePoly form;
};

struct MonomialCheck {
  /// No in_S(d^k f_l), k <= order, is a monomial.
  bool monomial_free = true;
  unsigned order = 0;
  std::vector<MonomialWitness> witnesses;
  /// forms[l][k] = in_S(d^k f_l).
  std::vector<std::vector<ResiduePoly>> forms;
  bool truncation_limited = false;
};

MonomialCheck initial_system_monomial_check(std::span<const DiffPoly> generators,
                                            std::span<const TropSeries> point, unsigned order);

}  // namespace tropdiff
