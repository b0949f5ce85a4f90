#include "tropdiff/initial.hpp"

#include "tropdiff/error.hpp"

namespace tropdiff {

ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
  ResiduePoly out;
  out.nvars = a.nvars;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      const ExponentMatrix m = ma * mb;
      const ResidueElem c = ca * cb;
      auto it = out.terms.find(m);
      if (it == out.terms.end()) {
        if (!c.is_zero()) out.terms.emplace(m, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }
  return out;
}

bool is_monomial(const ResiduePoly& g) { return g.terms.size() == 1; }

InitialForm initial_form(const DiffPoly& f, std::span<const TropSeries> point, bool strict) {
  const Backend& b = f.backend();
  LeadingTermTable table(point);
  InitialForm out;
  out.form.nvars = f.nvars();

  struct Weighted {
    const ExponentMatrix* monomial;
    const PowerSeries* coeff;
    Trop2 weight;
  };
  std::vector<Weighted> weights;
  Trop2 minimum;
  for (const auto& [m, c] : f.terms()) {
    Trop2 w = rank2_val(c).value;
    for (const auto& [v, e] : m.entries()) {
      const LeadingTerm& lt = table.at(v);
      out.truncation_limited |= lt.truncation_limited;
      // The literal definition scales x_i^(j) by phi(Phi(d^j S_i)).
      if (lt.value.is_finite()) section_phi(lt.value, b);
      w *= power(lt.value, e);
    }
    minimum += w;
    weights.push_back({&m, &c, std::move(w)});
  }
  if (strict && out.truncation_limited) {
    throw Error(ErrorCode::TruncationAmbiguous,
                "a needed leading term lies beyond the truncation window");
  }
  if (minimum.is_inf()) return out;
  section_phi(minimum, b);

  for (const auto& w : weights) {
    if (!(w.weight == minimum)) continue;
    const PowerSeries& c = *w.coeff;
    out.form.terms.emplace(*w.monomial, angular_component(c[*c.order()]));
  }
  return out;
}

MonomialCheck initial_system_monomial_check(std::span<const DiffPoly> generators,
                                            std::span<const TropSeries> point, unsigned order) {
  MonomialCheck out;
  out.order = order;
  for (std::size_t l = 0; l < generators.size(); ++l) {
    const auto family = derived_system(generators[l], order);
    std::vector<ResiduePoly> forms;
    for (unsigned k = 0; k <= order; ++k) {
      InitialForm in = initial_form(family[k], point);
      out.truncation_limited |= in.truncation_limited;
      if (is_monomial(in.form)) {
        out.monomial_free = false;
        out.witnesses.push_back({l, k, in.form});
      }
      forms.push_back(std::move(in.form));
    }
    out.forms.push_back(std::move(forms));
  }
  return out;
}

}  // namespace tropdiff
