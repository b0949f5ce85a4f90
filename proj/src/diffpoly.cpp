#include "tropdiff/diffpoly.hpp"

#include "tropdiff/error.hpp"

#include <algorithm>

namespace tropdiff {

ExponentMatrix ExponentMatrix::variable(Var v, unsigned exponent) {
  ExponentMatrix m;
  if (exponent > 0) m.entries_[v] = exponent;
  return m;
}

unsigned ExponentMatrix::exponent(Var v) const {
  const auto it = entries_.find(v);
  return it == entries_.end() ? 0 : it->second;
}

unsigned ExponentMatrix::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : entries_) d += e;
  return d;
}

std::optional<unsigned> ExponentMatrix::order() const {
  std::optional<unsigned> out;
  for (const auto& [v, e] : entries_) out = std::max(out.value_or(0), v.order);
  return out;
}

ExponentMatrix operator*(const ExponentMatrix& a, const ExponentMatrix& b) {
  ExponentMatrix out = a;
  for (const auto& [v, e] : b.entries_) out.entries_[v] += e;
  return out;
}

ExponentMatrix ExponentMatrix::without_one(Var v) const {
  ExponentMatrix out = *this;
  auto it = out.entries_.find(v);
  if (it == out.entries_.end()) throw Error(ErrorCode::InvalidArgument, "variable not present");
  if (--it->second == 0) out.entries_.erase(it);
  return out;
}

namespace {

// "Larger" variable prints first: higher derivative order, then lower index.
bool var_before(const Var& a, const Var& b) {
  if (a.order != b.order) return a.order > b.order;
  return a.index < b.index;
}

std::vector<Var> expanded(const ExponentMatrix& m) {
  std::vector<Var> out;
  for (const auto& [v, e] : m.entries()) out.insert(out.end(), e, v);
  std::sort(out.begin(), out.end(), var_before);
  return out;
}

}  // namespace

bool MonomialOrder::operator()(const ExponentMatrix& a, const ExponentMatrix& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  const auto ka = expanded(a);
  const auto kb = expanded(b);
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (ka[i] == kb[i]) continue;
    return var_before(ka[i], kb[i]);
  }
  return false;
}

DiffPoly::DiffPoly(const Backend& b, unsigned nvars, std::size_t coeff_length)
    : backend_(b), nvars_(nvars), length_(coeff_length) {}

DiffPoly DiffPoly::constant(const PowerSeries& c, unsigned nvars) {
  DiffPoly f(c.backend(), nvars, c.length());
  f.add_term(ExponentMatrix(), c);
  return f;
}

DiffPoly DiffPoly::variable(const Backend& b, unsigned nvars, std::size_t coeff_length, Var v) {
  if (v.index >= nvars) {
    throw Error(ErrorCode::UnknownVariable, "x" + std::to_string(v.index + 1) + " with " +
                                                std::to_string(nvars) + " variables");
  }
  DiffPoly f(b, nvars, coeff_length);
  f.add_term(ExponentMatrix::variable(v), PowerSeries::constant(FieldElem::one(b), coeff_length));
  return f;
}

unsigned DiffPoly::order() const {
  unsigned out = 0;
  for (const auto& [m, c] : terms_) out = std::max(out, m.order().value_or(0));
  return out;
}

void DiffPoly::add_term(const ExponentMatrix& lambda, const PowerSeries& c) {
  for (const auto& [v, e] : lambda.entries()) {
    if (v.index >= nvars_) {
      throw Error(ErrorCode::UnknownVariable, "x" + std::to_string(v.index + 1) + " with " +
                                                  std::to_string(nvars_) + " variables");
    }
  }
  if (!(c.backend() == backend_)) throw Error(ErrorCode::BackendMismatch, c.backend().name());
  PowerSeries coeff = c.truncated(length_);
  if (coeff.length() < length_) {
    throw Error(ErrorCode::TruncationExhausted, "coefficient window shorter than polynomial's");
  }
  auto it = terms_.find(lambda);
  if (it == terms_.end()) {
    if (!coeff.is_zero()) terms_.emplace(lambda, std::move(coeff));
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

namespace {

void require_compatible(const DiffPoly& a, const DiffPoly& b) {
  if (!(a.backend() == b.backend()) || a.nvars() != b.nvars()) {
    throw Error(ErrorCode::BackendMismatch, "polynomials over different rings");
  }
}

DiffPoly rewindowed(const DiffPoly& f, std::size_t length) {
  DiffPoly out(f.backend(), f.nvars(), length);
  for (const auto& [m, c] : f.terms()) out.add_term(m, c.truncated(length));
  return out;
}

}  // namespace

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  require_compatible(a, b);
  const std::size_t n = std::min(a.length_, b.length_);
  DiffPoly out = rewindowed(a, n);
  for (const auto& [m, c] : b.terms_) out.add_term(m, c.truncated(n));
  return out;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly DiffPoly::operator-() const {
  DiffPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  require_compatible(a, b);
  const std::size_t n = std::min(a.length_, b.length_);
  DiffPoly out(a.backend_, a.nvars_, n);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca.truncated(n) * cb.truncated(n));
  }
  return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  return a.backend_ == b.backend_ && a.nvars_ == b.nvars_ && a.length_ == b.length_ &&
         a.terms_ == b.terms_;
}

DiffPoly diff(const DiffPoly& f) {
  if (f.coeff_length() < 2) {
    throw Error(ErrorCode::TruncationExhausted,
                "cannot differentiate coefficients of truncation " +
                    std::to_string(static_cast<long>(f.coeff_length()) - 1));
  }
  const std::size_t n = f.coeff_length() - 1;
  DiffPoly out(f.backend(), f.nvars(), n);
  for (const auto& [m, c] : f.terms()) {
    out.add_term(m, c.derivative());
    const PowerSeries shorter = c.truncated(n);
    for (const auto& [v, e] : m.entries()) {
      const ExponentMatrix shifted =
          m.without_one(v) * ExponentMatrix::variable(Var{v.index, v.order + 1});
      out.add_term(shifted, FieldElem::from_rational(f.backend(), Rational(e)) * shorter);
    }
  }
  return out;
}

TropDiffPoly tropicalize_poly(const DiffPoly& f) {
  TropDiffPoly g;
  g.nvars = f.nvars();
  for (const auto& [m, c] : f.terms()) {
    // Stored coefficients are nonzero in their window, so the leading term exists.
    g.terms.emplace(m, rank2_val(c).value);
  }
  return g;
}

TropDiffPoly tropicalize_poly_grigoriev(const DiffPoly& f) {
  TropDiffPoly g;
  g.nvars = f.nvars();
  for (const auto& [m, c] : f.terms()) {
    g.terms.emplace(m, Trop2(Rational(static_cast<long>(*c.order())), Rational(0)));
  }
  return g;
}

TropDiffPoly sigma0_poly(const TropDiffPoly& g) {
  TropDiffPoly out;
  out.nvars = g.nvars;
  for (const auto& [m, w] : g.terms) {
    const TropNum a = sigma0(w);
    out.terms.emplace(m, a.is_inf() ? Trop2::inf() : Trop2(a.value(), Rational(0)));
  }
  return out;
}

PowerSeries eval_classical(const DiffPoly& f, std::span<const PowerSeries> a) {
  if (a.size() < f.nvars()) {
    throw Error(ErrorCode::MissingVariable, std::to_string(f.nvars()) + " variables, " +
                                                std::to_string(a.size()) + " series given");
  }
  const unsigned ord = f.order();
  std::size_t length = f.coeff_length();
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (a[i].length() <= ord) {
      throw Error(ErrorCode::TruncationExhausted, "series too short for order " + std::to_string(ord));
    }
    length = std::min(length, a[i].length() - ord);
  }
  if (length == 0) throw Error(ErrorCode::TruncationExhausted, "empty result window");

  std::vector<std::vector<PowerSeries>> derivs(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    derivs[i].push_back(a[i]);
    for (unsigned j = 1; j <= ord; ++j) derivs[i].push_back(derivs[i].back().derivative());
  }

  PowerSeries total = PowerSeries::zero(f.backend(), length);
  for (const auto& [m, c] : f.terms()) {
    PowerSeries term = c.truncated(length);
    for (const auto& [v, e] : m.entries()) {
      const PowerSeries factor = derivs[v.index][v.order].truncated(length);
      for (unsigned k = 0; k < e; ++k) term = term * factor;
    }
    total = total + term;
  }
  return total;
}

LeadingTermTable::LeadingTermTable(std::span<const TropSeries> point) : point_(point) {}

const LeadingTerm& LeadingTermTable::at(Var v) {
  if (v.index >= point_.size()) {
    throw Error(ErrorCode::MissingVariable, "no series for x" + std::to_string(v.index + 1));
  }
  auto it = cache_.find(v);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(v, phi_leading(trop_diff(point_[v.index], v.order))).first->second;
}

EvalReport<Trop2> eval_tropical(const TropDiffPoly& g, std::span<const TropSeries> point) {
  LeadingTermTable table(point);
  EvalReport<Trop2> report;
  std::vector<std::pair<const ExponentMatrix*, Trop2>> weights;
  for (const auto& [m, coeff] : g.terms) {
    Trop2 w = coeff;
    for (const auto& [v, e] : m.entries()) {
      const LeadingTerm& lt = table.at(v);
      report.truncation_limited |= lt.truncation_limited;
      w *= power(lt.value, e);
    }
    report.value += w;
    weights.emplace_back(&m, std::move(w));
  }
  if (report.value.is_finite()) {
    for (const auto& [m, w] : weights) {
      if (w == report.value) report.attainment.push_back(*m);
    }
  }
  report.vanishes = report.value.is_inf() || report.attainment.size() >= 2;
  return report;
}

EvalReport<TropNum> eval_trop1(const TropPoly1& g, std::span<const std::vector<TropNum>> point) {
  EvalReport<TropNum> report;
  std::vector<std::pair<const ExponentMatrix*, TropNum>> weights;
  for (const auto& [m, coeff] : g.terms) {
    TropNum w = coeff;
    for (const auto& [v, e] : m.entries()) {
      if (v.index >= point.size() || v.order >= point[v.index].size()) {
        throw Error(ErrorCode::MissingVariable, "no value for x" + std::to_string(v.index + 1) +
                                                    "^(" + std::to_string(v.order) + ")");
      }
      w *= power(point[v.index][v.order], e);
    }
    report.value += w;
    weights.emplace_back(&m, std::move(w));
  }
  if (report.value.is_finite()) {
    for (const auto& [m, w] : weights) {
      if (w == report.value) report.attainment.push_back(*m);
    }
  }
  report.vanishes = report.value.is_inf() || report.attainment.size() >= 2;
  return report;
}

ConstPoly f_lr(const DiffPoly& f, unsigned r) {
  if (f.coeff_length() < static_cast<std::size_t>(r) + 1) {
    throw Error(ErrorCode::TruncationExhausted,
                "F_r with r = " + std::to_string(r) + " needs truncation >= r");
  }
  DiffPoly d = f;
  for (unsigned k = 0; k < r; ++k) d = diff(d);
  ConstPoly out;
  out.nvars = f.nvars();
  for (const auto& [m, c] : d.terms()) {
    FieldElem c0 = c.at_zero();
    if (!c0.is_zero()) out.terms.emplace(m, std::move(c0));
  }
  return out;
}

TropPoly1 tropicalize_const(const ConstPoly& g) {
  TropPoly1 out;
  out.nvars = g.nvars;
  for (const auto& [m, c] : g.terms) out.terms.emplace(m, field_val(c));
  return out;
}

FieldElem eval_const(const ConstPoly& g, std::span<const std::vector<FieldElem>> point,
                     const Backend& b) {
  FieldElem total = FieldElem::zero(b);
  for (const auto& [m, c] : g.terms) {
    FieldElem term = c;
    for (const auto& [v, e] : m.entries()) {
      if (v.index >= point.size() || v.order >= point[v.index].size()) {
        throw Error(ErrorCode::MissingVariable, "no value for x" + std::to_string(v.index + 1) +
                                                    "^(" + std::to_string(v.order) + ")");
      }
      term *= point[v.index][v.order].pow(e);
    }
    total += term;
  }
  return total;
}

std::vector<DiffPoly> derived_system(const DiffPoly& f, unsigned m) {
  if (f.coeff_length() < static_cast<std::size_t>(m) + 1) {
    throw Error(ErrorCode::TruncationExhausted,
                "derivation order " + std::to_string(m) + " exceeds truncation " +
                    std::to_string(static_cast<long>(f.coeff_length()) - 1));
  }
  std::vector<DiffPoly> out{f};
  for (unsigned k = 1; k <= m; ++k) out.push_back(diff(out.back()));
  return out;
}

std::vector<TropDiffPoly> tropicalize_system(std::span<const DiffPoly> system) {
  std::vector<TropDiffPoly> out;
  out.reserve(system.size());
  for (const auto& f : system) out.push_back(tropicalize_poly(f));
  return out;
}

SolutionReport is_tropical_solution(std::span<const TropDiffPoly> system,
                                    std::span<const TropSeries> point) {
  SolutionReport report;
  for (std::size_t k = 0; k < system.size(); ++k) {
    auto r = eval_tropical(system[k], point);
    report.truncation_limited |= r.truncation_limited;
    if (!r.vanishes && !report.first_failure) report.first_failure = k;
    report.all_vanish &= r.vanishes;
    report.equations.push_back(std::move(r));
  }
  return report;
}

}  // namespace tropdiff
