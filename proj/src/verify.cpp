#include "tropdiff/verify.hpp"

#include "tropdiff/error.hpp"
#include "tropdiff/parser.hpp"

#include <stdexcept>
#include <utility>

namespace tropdiff {

void FTSection::add(CheckResult c) {
  if (!c.passed) {
    passed = false;
    if (!first_failure) first_failure = c.name;
  }
  checks.push_back(std::move(c));
}

void FTReport::add(FTSection s) {
  if (!s.passed) {
    passed = false;
    if (!failed_step) failed_step = s.name;
  }
  sections.push_back(std::move(s));
}

DiffPoly linear_ode_poly(const LinearODE& ode) {
  const Backend& b = ode.g.backend();
  const std::size_t len = ode.g.length();
  return DiffPoly::variable(b, 1, len, Var{0, 1}) -
         DiffPoly::constant(ode.g, 1) * DiffPoly::variable(b, 1, len, Var{0, 0});
}

PowerSeries solve_linear(const LinearODE& ode) {
  const Backend& b = ode.g.backend();
  const std::size_t n = ode.truncation;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be at least 1");
  if (ode.g.length() < n) {
    throw Error(ErrorCode::InvalidArgument, "g must be known to t^" + std::to_string(n - 1));
  }
  std::vector<FieldElem> c(n + 1, FieldElem::zero(b));
  c[0] = ode.c0;
  for (std::size_t k = 0; k < n; ++k) {
    FieldElem acc = FieldElem::zero(b);
    for (std::size_t j = 0; j <= k; ++j) {
      if (ode.g[j].is_zero() || c[k - j].is_zero()) continue;
      acc += ode.g[j] * c[k - j];
    }
    c[k + 1] = acc * Rational(1, static_cast<long>(k + 1));
  }
  PowerSeries sol(b, std::move(c));
  const PowerSeries residual = eval_classical(linear_ode_poly(ode), std::span(&sol, 1));
  if (!residual.is_zero()) throw std::logic_error("recurrence solution does not satisfy x' = g x");
  return sol;
}

LinearODE exp_ode(unsigned long p, std::size_t truncation) {
  const Backend b = Backend::eisenstein(p);
  const FieldElem coeff = FieldElem::zeta(b) * Rational(static_cast<long>(p));
  const std::size_t len = std::max<std::size_t>(truncation, p);
  return {PowerSeries::monomial(coeff, p - 1, len), FieldElem::one(b), truncation};
}

LinearODE random_linear_ode(std::mt19937_64& rng, const Backend& b, std::size_t truncation) {
  std::uniform_int_distribution<int> degree(0, 3);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  auto rational = [&] { return ratio(num(rng), den(rng)); };
  const std::size_t len = std::max<std::size_t>(truncation, 4);
  std::vector<FieldElem> g(len, FieldElem::zero(b));
  const int d = degree(rng);
  for (int j = 0; j <= d; ++j) g[j] = FieldElem::from_rational(b, rational());
  Rational c0 = rational();
  while (c0 == 0) c0 = rational();
  return {PowerSeries(b, std::move(g)), FieldElem::from_rational(b, c0), truncation};
}

namespace {

OrderRow make_row(std::size_t generator, unsigned order, const EvalReport<Trop2>& r) {
  return {generator, order, to_string(r.value), r.attainment.size(), r.vanishes, r.truncation_limited};
}

std::string failure_detail(const SolutionReport& r) {
  if (r.all_vanish) return "all orders vanish";
  const auto& e = r.equations[*r.first_failure];
  return "fails at order " + std::to_string(*r.first_failure) + ": minimum " + to_string(e.value) +
         " attained " + std::to_string(e.attainment.size()) + " time(s)";
}

std::vector<TropSeries> tropicalize_all(std::span<const PowerSeries> sol) {
  std::vector<TropSeries> out;
  for (const auto& s : sol) out.push_back(tropicalize_series(s));
  return out;
}

}  // namespace

FTSection check_easy_inclusion(const DiffPoly& f, std::span<const PowerSeries> sol, unsigned m) {
  FTSection s;
  s.name = "easy-inclusion";
  s.order = m;
  s.truncation = sol.empty() ? f.coeff_length() - 1 : sol.front().length() - 1;
  if (!eval_classical(f, sol).is_zero()) {
    throw Error(ErrorCode::NotAClassicalSolution, "f(a) is nonzero on its valid window");
  }
  const auto system = tropicalize_system(derived_system(f, m));
  const auto point = tropicalize_all(sol);
  const SolutionReport r = is_tropical_solution(system, point);
  for (unsigned k = 0; k < r.equations.size(); ++k) s.table.push_back(make_row(0, k, r.equations[k]));
  s.truncation_limited = r.truncation_limited;
  s.add({"trop(d^k f) vanishes at trop(a) for k <= " + std::to_string(m), r.all_vanish,
         failure_detail(r)});
  return s;
}

FTSection check_lemma_truncation(const DiffPoly& f, std::span<const TropSeries> point, unsigned m) {
  FTSection s;
  s.name = "lemma-truncation";
  s.order = m;
  s.truncation = point.empty() ? 0 : point.front().length() - 1;
  std::vector<std::vector<TropNum>> b;
  for (const auto& series : point) b.push_back(psi_trop_inverse(series));
  std::optional<unsigned> failing;
  for (unsigned r = 0; r <= m; ++r) {
    const TropPoly1 g = tropicalize_const(f_lr(f, r));
    const EvalReport<TropNum> e = eval_trop1(g, b);
    s.table.push_back({0, r, to_string(e.value), e.attainment.size(), e.vanishes, e.truncation_limited});
    s.truncation_limited |= e.truncation_limited;
    if (!e.vanishes && !failing) failing = r;
  }
  s.add({"trop(F_r) vanishes at B_m for r <= " + std::to_string(m), !failing,
         failing ? "fails at r = " + std::to_string(*failing) : "all r vanish"});
  return s;
}

TropDiffPoly exp_derived_closed_form(unsigned long p, unsigned n) {
  TropDiffPoly g;
  g.terms.emplace(ExponentMatrix::variable(Var{0, n + 1}), Trop2::zero());
  const Rational base(static_cast<long>(p), static_cast<long>(p - 1));
  for (unsigned long i = 0; i <= std::min<unsigned long>(n, p - 1); ++i) {
    const Rational v = base + Rational(padic_val(binomial(n, i), p));
    g.terms.emplace(ExponentMatrix::variable(Var{0, static_cast<unsigned>(n - i)}),
                    Trop2(Rational(static_cast<long>(p - 1 - i)), v));
  }
  return g;
}

namespace {

TropSeries perturbed(const TropSeries& s, std::size_t index) {
  std::vector<TropNum> c = s.coeffs();
  if (index < c.size()) c[index] = c[index] * TropNum(1L);
  return TropSeries(std::move(c), s.nat_valuation(), s.exact_tail());
}

// Guards a step so that an unexpected exception becomes a failed check.
template <class Body>
FTSection run_step(const std::string& name, std::size_t truncation, unsigned order, Body body) {
  FTSection s;
  s.name = name;
  s.truncation = truncation;
  s.order = order;
  try {
    body(s);
  } catch (const std::exception& e) {
    s.add({"step completed", false, e.what()});
  }
  return s;
}

}  // namespace

FTReport reproduce_exp_example(unsigned long p, std::size_t truncation, unsigned order) {
  const std::size_t n = truncation;
  const unsigned m = order;
  const Backend b = Backend::eisenstein(p);
  FTReport rep;
  rep.backend = b.name();
  rep.prime = p;
  rep.truncation = n;
  rep.order = m;

  const LinearODE ode = exp_ode(p, n);
  const DiffPoly f = linear_ode_poly(ode);
  std::optional<PowerSeries> sol;
  std::optional<TropSeries> trop_sol;
  std::optional<TropSeries> bad;
  std::vector<TropDiffPoly> system;
  const RadiusRule rule = RadiusRule::exp_family(p);

  auto step = [&](const std::string& name, auto body) {
    rep.add(run_step(name, n, m, body));
    return rep.passed;
  };

  if (!step("solve-linear", [&](FTSection& s) {
        sol = solve_linear(ode);
        std::size_t bad_count = 0;
        for (std::size_t k = 0; k <= n; ++k) {
          FieldElem expected = FieldElem::zero(b);
          if (k % p == 0) {
            const unsigned long j = k / p;
            expected = FieldElem::zeta(b).pow(static_cast<long>(j)) *
                       Rational(Rational(1) / Rational(factorial(j)));
          }
          if (!((*sol)[k] == expected)) ++bad_count;
        }
        s.add({"c_{mp} = zeta^m/m!, other c_k = 0", bad_count == 0,
               std::to_string(bad_count) + " mismatching coefficient(s)"});
      })) {
    return rep;
  }

  if (!step("tropicalize", [&](FTSection& s) {
        trop_sol = tropicalize_series(*sol);
        const TropDiffPoly tf = tropicalize_poly(f);
        TropDiffPoly expected;
        expected.terms.emplace(ExponentMatrix::variable(Var{0, 1}), Trop2::zero());
        expected.terms.emplace(ExponentMatrix::variable(Var{0, 0}),
                               Trop2(Rational(static_cast<long>(p - 1)),
                                     Rational(static_cast<long>(p), static_cast<long>(p - 1))));
        s.add({"trop(f) = x' + (p-1, p/(p-1))*x", tf == expected, print_poly(tf)});
      })) {
    return rep;
  }

  if (!step("closed-form", [&](FTSection& s) {
        std::size_t bad_count = 0;
        std::string first;
        for (std::size_t k = 0; k <= n; ++k) {
          const TropNum want = rule.coefficient(k);
          if (!((*trop_sol)[k] == want)) {
            if (bad_count++ == 0) {
              first = "a_" + std::to_string(k) + " = " + to_string((*trop_sol)[k]) + ", expected " +
                      to_string(want);
            }
          }
        }
        s.add({"a_{mp} = m/(p-1) - v_p(m!), INF elsewhere", bad_count == 0,
               bad_count == 0 ? "exact match on " + std::to_string(n + 1) + " coefficients" : first});
      })) {
    return rep;
  }

  if (!step("tropical-solution", [&](FTSection& s) {
        const auto derived = derived_system(f, m);
        system = tropicalize_system(derived);
        std::optional<unsigned> mismatch;
        for (unsigned k = 0; k <= m; ++k) {
          if (!(system[k] == exp_derived_closed_form(p, k)) && !mismatch) mismatch = k;
        }
        s.add({"trop(d^n f) matches its closed form", !mismatch,
               mismatch ? "differs at n = " + std::to_string(*mismatch) : "n <= " + std::to_string(m)});
        const SolutionReport r = is_tropical_solution(system, std::span(&*trop_sol, 1));
        for (unsigned k = 0; k < r.equations.size(); ++k) s.table.push_back(make_row(0, k, r.equations[k]));
        s.truncation_limited = r.truncation_limited;
        s.add({"solution vanishes on the derived system", r.all_vanish, failure_detail(r)});
        bad = perturbed(*trop_sol, p);
        const SolutionReport rb = is_tropical_solution(system, std::span(&*bad, 1));
        s.add({"a_p + 1 is rejected", !rb.all_vanish, failure_detail(rb)});
      })) {
    return rep;
  }

  if (!step("initial-form", [&](FTSection& s) {
        const InitialForm in = initial_form(f, std::span(&*trop_sol, 1));
        ResiduePoly expected;
        expected.terms.emplace(ExponentMatrix::variable(Var{0, 1}), ResidueElem::one(p));
        expected.terms.emplace(ExponentMatrix::variable(Var{0, 0}), ResidueElem::one(p));
        s.truncation_limited = in.truncation_limited;
        s.add({"in_S(f) = x' + x", in.form == expected, print_poly(in.form)});
      })) {
    return rep;
  }

  if (!step("radius", [&](FTSection& s) {
        const RadiusEstimate exact = radius_from_rule(rule);
        s.add({"rule gives log r = 0",
               exact.log_radius.is_finite() && exact.log_radius.value() == 0,
               "log_r = " + to_string(exact.log_radius)});
        const std::size_t big = std::max<std::size_t>(200, n);
        const PowerSeries long_sol = solve_linear(exp_ode(p, big));
        const RadiusEstimate est = radius_window_estimate(tropicalize_series(long_sol), 100);
        const Rational tolerance(3, 20);
        const bool close = est.log_radius.is_finite() && abs(est.log_radius.value()) <= tolerance;
        s.add({"window [100, " + std::to_string(big) + "] estimate within 3/20 of 0", close,
               "log_r ~ " + to_string(est.log_radius)});
      })) {
    return rep;
  }

  if (!step("sigma-projection", [&](FTSection& s) {
        const BoolSeries boolean = sigma_to_grigoriev(*trop_sol);
        std::vector<std::size_t> support;
        for (std::size_t k = 0; k <= n; ++k) {
          if (!(*sol)[k].is_zero()) support.push_back(k);
        }
        s.add({"sigma(trop a) is the support of a", boolean.support == support,
               std::to_string(support.size()) + " support indices"});
        const TropDiffPoly tw = tropicalize_poly_grigoriev(f);
        s.add({"trop_w(f) = sigma0(trop_v(f))", tw == sigma0_poly(tropicalize_poly(f)), print_poly(tw)});
        std::vector<TropDiffPoly> grigoriev;
        for (const auto& g : derived_system(f, m)) grigoriev.push_back(tropicalize_poly_grigoriev(g));
        const TropSeries bs = boolean.to_trop_series();
        const SolutionReport r = is_tropical_solution(grigoriev, std::span(&bs, 1));
        s.add({"support solves the Grigoriev system", r.all_vanish, failure_detail(r)});
      })) {
    return rep;
  }

  if (!step("monomial-check", [&](FTSection& s) {
        const std::vector<DiffPoly> gens{f};
        for (const TropSeries* point : {&*trop_sol, &*bad}) {
          const MonomialCheck mc = initial_system_monomial_check(gens, std::span(point, 1), m);
          const SolutionReport r = is_tropical_solution(system, std::span(point, 1));
          s.truncation_limited |= mc.truncation_limited;
          const std::string label = point == &*bad ? "perturbed" : "solution";
          s.add({label + ": no monomial initial form iff tropical solution",
                 mc.monomial_free == r.all_vanish,
                 std::string(mc.monomial_free ? "monomial-free" : "monomial found") + ", " +
                     (r.all_vanish ? "solution" : "not a solution")});
        }
      })) {
    return rep;
  }

  if (!step("lemma-truncation", [&](FTSection& s) {
        FTSection lemma = check_lemma_truncation(f, std::span(&*trop_sol, 1), m);
        s.table = std::move(lemma.table);
        s.truncation_limited = lemma.truncation_limited;
        for (auto& c : lemma.checks) s.add(std::move(c));
        const FTSection broken = check_lemma_truncation(f, std::span(&*bad, 1), m);
        s.add({"a_p + 1 violates some F_r", !broken.passed,
               broken.checks.empty() ? "" : broken.checks.front().detail});
      })) {
    return rep;
  }

  step("tropical-multiple", [&](FTSection& s) {
    for (const Rational& c : {Rational(-1), Rational(5, 2)}) {
      const TropSeries scaled = TropNum(c) * *trop_sol;
      const SolutionReport r = is_tropical_solution(system, std::span(&scaled, 1));
      s.add({to_string(c) + " * S is a solution", r.all_vanish, failure_detail(r)});
    }
  });
  return rep;
}

FTReport random_inclusion_suite(std::uint64_t seed, std::size_t count, unsigned long p,
                                std::size_t truncation, unsigned order) {
  const Backend b = Backend::padic(p);
  std::mt19937_64 rng(seed);
  FTReport rep;
  rep.backend = b.name();
  rep.prime = p;
  rep.truncation = truncation;
  rep.order = order;
  rep.seed = seed;

  FTSection easy;
  easy.name = "easy-inclusion";
  FTSection lemma;
  lemma.name = "lemma-truncation";
  for (FTSection* s : {&easy, &lemma}) {
    s->order = order;
    s->truncation = truncation;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const LinearODE ode = random_linear_ode(rng, b, truncation);
    const DiffPoly f = linear_ode_poly(ode);
    const std::string label = "ode " + std::to_string(i) + ": x' = (" +
                              print_poly(DiffPoly::constant(ode.g, 1)) + ")*x, x(0) = " +
                              to_string(ode.c0);
    auto merge = [&](FTSection& into, FTSection part) {
      for (auto& row : part.table) {
        row.generator = i;
        into.table.push_back(std::move(row));
      }
      into.truncation_limited |= part.truncation_limited;
      for (auto& c : part.checks) into.add({label, c.passed, c.detail});
    };
    try {
      const PowerSeries sol = solve_linear(ode);
      merge(easy, check_easy_inclusion(f, std::span(&sol, 1), order));
      const TropSeries s = tropicalize_series(sol);
      merge(lemma, check_lemma_truncation(f, std::span(&s, 1), order));
    } catch (const std::exception& e) {
      easy.add({label, false, e.what()});
    }
  }
  rep.add(std::move(easy));
  rep.add(std::move(lemma));
  return rep;
}

}  // namespace tropdiff
