#pragma once

// Solution checks at truncation scale. Covers the recurrence solver for
// x' = g x, the inclusion trop(Sol) in Sol(trop), the truncation lemma on
// B_m vectors, and the end-to-end exp(zeta t^p) pipeline.

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/initial.hpp"
#include "tropdiff/radius.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace tropdiff {

/// x' = g x, x(0) = c0, solved to t^truncation.
struct LinearODE {
  PowerSeries g;
  FieldElem c0;
  std::size_t truncation = 1;
};

/// The polynomial x' - g x with coefficient window g.length().
DiffPoly linear_ode_poly(const LinearODE& ode);

/// c_{k+1} = (1/(k+1)) sum_{j<=k} g_j c_{k-j}; the result has length
/// truncation + 1 and is checked against x' - g x before returning.
PowerSeries solve_linear(const LinearODE& ode);

/// x' = p zeta t^(p-1) x, x(0) = 1, whose solution is exp(zeta t^p).
LinearODE exp_ode(unsigned long p, std::size_t truncation);

/// Random rational g of degree <= 3 and nonzero rational c0.
LinearODE random_linear_ode(std::mt19937_64& rng, const Backend& b, std::size_t truncation);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// One evaluation trop(d^k f)(S).
struct OrderRow {
  std::size_t generator = 0;
  unsigned order = 0;
  std::string value;
  std::size_t attained = 0;
  bool vanishes = false;
  bool truncation_limited = false;
};

struct FTSection {
  std::string name;
  unsigned order = 0;
  std::size_t truncation = 0;
  bool passed = true;
  bool truncation_limited = false;
  std::vector<OrderRow> table;
  std::vector<CheckResult> checks;
  std::optional<std::string> first_failure;

  void add(CheckResult c);
};

struct FTReport {
  static constexpr const char* schema = "tropdiff/report-v1";
  std::string backend;
  unsigned long prime = 0;
  std::size_t truncation = 0;
  unsigned order = 0;
  std::optional<std::uint64_t> seed;
  bool passed = true;
  std::optional<std::string> failed_step;
  std::vector<FTSection> sections;

  void add(FTSection s);
};

/// Asserts is_tropical_solution({trop(d^k f)}_{k<=m}, trop(sol)).
/// NotAClassicalSolution unless f(sol) vanishes on its valid window.
FTSection check_easy_inclusion(const DiffPoly& f, std::span<const PowerSeries> sol, unsigned m);

/// Evaluates trop(F_{l,r}), r <= m, at b_{i,j} = c_{i,j} + v(j!).
FTSection check_lemma_truncation(const DiffPoly& f, std::span<const TropSeries> point, unsigned m);

/// trop(d^n f) for f = x' - p zeta t^(p-1) x:
/// x^(n+1) + sum_{i <= min(n, p-1)} (p-1-i, p/(p-1) + v_p(C(n, i))) x^(n-i).
TropDiffPoly exp_derived_closed_form(unsigned long p, unsigned n);

/// Runs the exp(zeta t^p) pipeline, stopping at the first failing step.
FTReport reproduce_exp_example(unsigned long p, std::size_t truncation, unsigned order);

/// Easy inclusion and truncation lemma on `count` random linear ODEs.
FTReport random_inclusion_suite(std::uint64_t seed, std::size_t count, unsigned long p,
                                std::size_t truncation, unsigned order);

}  // namespace tropdiff
