#include "tropdiff/series.hpp"

#include "tropdiff/error.hpp"

#include <algorithm>

namespace tropdiff {

namespace {

void require_same(const PowerSeries& a, const PowerSeries& b) {
  if (!(a.backend() == b.backend())) {
    throw Error(ErrorCode::BackendMismatch, a.backend().name() + " vs " + b.backend().name());
  }
}

void require_same(const TropSeries& a, const TropSeries& b) {
  if (!(a.nat_valuation() == b.nat_valuation())) {
    throw Error(ErrorCode::BackendMismatch,
                a.nat_valuation().name() + " vs " + b.nat_valuation().name());
  }
}

// One past the last finite coefficient in the window.
std::size_t support_end(const TropSeries& s) {
  for (std::size_t k = s.length(); k > 0; --k) {
    if (s[k - 1].is_finite()) return k;
  }
  return 0;
}

}  // namespace

PowerSeries::PowerSeries(const Backend& b, std::vector<FieldElem> coeffs)
    : backend_(b), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!(c.backend() == backend_)) {
      throw Error(ErrorCode::BackendMismatch, "coefficient over " + c.backend().name());
    }
  }
}

PowerSeries PowerSeries::zero(const Backend& b, std::size_t length) {
  return PowerSeries(b, std::vector<FieldElem>(length, FieldElem::zero(b)));
}

PowerSeries PowerSeries::constant(const FieldElem& c, std::size_t length) {
  return monomial(c, 0, length);
}

PowerSeries PowerSeries::monomial(const FieldElem& c, std::size_t k, std::size_t length) {
  PowerSeries s = zero(c.backend(), length);
  if (k < length) s.coeffs_[k] = c;
  return s;
}

bool PowerSeries::is_zero() const { return !order().has_value(); }

std::optional<std::size_t> PowerSeries::order() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return k;
  }
  return std::nullopt;
}

PowerSeries PowerSeries::truncated(std::size_t length) const {
  PowerSeries out = *this;
  if (length < out.coeffs_.size()) out.coeffs_.resize(length, FieldElem::zero(backend_));
  return out;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  require_same(a, b);
  const std::size_t n = std::min(a.length(), b.length());
  PowerSeries out = a.truncated(n);
  for (std::size_t k = 0; k < n; ++k) out.coeffs_[k] += b.coeffs_[k];
  return out;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

PowerSeries PowerSeries::operator-() const {
  PowerSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  require_same(a, b);
  const std::size_t n = std::min(a.length(), b.length());
  PowerSeries out = PowerSeries::zero(a.backend_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

PowerSeries operator*(const FieldElem& c, const PowerSeries& a) {
  PowerSeries out = a;
  for (auto& x : out.coeffs_) x = c * x;
  return out;
}

bool operator==(const PowerSeries& a, const PowerSeries& b) {
  return a.backend_ == b.backend_ && a.coeffs_ == b.coeffs_;
}

PowerSeries PowerSeries::derivative() const {
  if (coeffs_.empty()) return *this;
  std::vector<FieldElem> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d.push_back(coeffs_[k] * Rational(static_cast<long>(k)));
  }
  return PowerSeries(backend_, std::move(d));
}

FieldElem PowerSeries::at_zero() const {
  if (coeffs_.empty()) throw Error(ErrorCode::TruncationExhausted, "empty coefficient window");
  return coeffs_[0];
}

TropSeries::TropSeries(std::vector<TropNum> coeffs, NatValuation nat_val, bool exact_tail)
    : coeffs_(std::move(coeffs)), nat_val_(std::move(nat_val)), exact_tail_(exact_tail) {}

TropSeries TropSeries::infinite(std::size_t length, NatValuation nat_val, bool exact_tail) {
  return TropSeries(std::vector<TropNum>(length), std::move(nat_val), exact_tail);
}

bool TropSeries::is_boolean() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const TropNum& c) { return tropdiff::is_boolean(c); });
}

TropSeries operator+(const TropSeries& a, const TropSeries& b) {
  require_same(a, b);
  const std::size_t n = std::min(a.length(), b.length());
  std::vector<TropNum> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
  // Known-INF tails survive when nothing finite was cut off.
  const bool exact = a.exact_tail_ && b.exact_tail_ && support_end(a) <= n && support_end(b) <= n;
  return TropSeries(std::move(c), a.nat_val_, exact);
}

TropSeries operator*(const TropSeries& a, const TropSeries& b) {
  require_same(a, b);
  const std::size_t n = std::min(a.length(), b.length());
  std::vector<TropNum> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_inf()) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  const std::size_t ea = support_end(a);
  const std::size_t eb = support_end(b);
  const bool exact = a.exact_tail_ && b.exact_tail_ &&
                     (ea == 0 || eb == 0 || ea + eb - 1 <= n);
  return TropSeries(std::move(c), a.nat_val_, exact);
}

TropSeries operator*(const TropNum& c, const TropSeries& a) {
  TropSeries out = a;
  for (auto& x : out.coeffs_) x = c * x;
  return out;
}

bool operator==(const TropSeries& a, const TropSeries& b) {
  return a.nat_val_ == b.nat_val_ && a.coeffs_ == b.coeffs_;
}

TropSeries BoolSeries::to_trop_series(bool exact_tail) const {
  std::vector<TropNum> c(length);
  for (std::size_t k : support) {
    if (k < length) c[k] = TropNum::zero();
  }
  return TropSeries(std::move(c), NatValuation::trivial(), exact_tail);
}

TropSeries trop_diff(const TropSeries& s) {
  if (s.length() == 0) return s;
  std::vector<TropNum> d(s.length() - 1);
  for (std::size_t k = 1; k < s.length(); ++k) d[k - 1] = s.nat_valuation()(k) * s[k];
  return TropSeries(std::move(d), s.nat_valuation(), s.exact_tail());
}

TropSeries trop_diff(const TropSeries& s, unsigned long times) {
  TropSeries out = s;
  for (unsigned long i = 0; i < times; ++i) out = trop_diff(out);
  return out;
}

LeadingTerm phi_leading(const TropSeries& s) {
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (s[k].is_finite()) return {Trop2(Rational(static_cast<long>(k)), s[k].value()), false};
  }
  return {Trop2::inf(), !s.exact_tail()};
}

TropSeries tropicalize_series(const PowerSeries& a) {
  std::vector<TropNum> c;
  c.reserve(a.length());
  for (const auto& x : a.coeffs()) c.push_back(field_val(x));
  return TropSeries(std::move(c), a.backend().nat_valuation());
}

LeadingTerm rank2_val(const PowerSeries& a) {
  const auto n0 = a.order();
  if (!n0) return {Trop2::inf(), true};
  return {Trop2(Rational(static_cast<long>(*n0)), field_val(a[*n0]).value()), false};
}

PowerSeries psi(std::span<const FieldElem> a, const Backend& b) {
  std::vector<FieldElem> c;
  c.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    c.push_back(a[j] * Rational(Rational(1) / Rational(factorial(j))));
  }
  return PowerSeries(b, std::move(c));
}

std::vector<FieldElem> psi_inverse(const PowerSeries& s) {
  std::vector<FieldElem> a;
  a.reserve(s.length());
  for (std::size_t j = 0; j < s.length(); ++j) a.push_back(s[j] * Rational(factorial(j)));
  return a;
}

TropSeries psi_trop(std::span<const TropNum> b, const NatValuation& nat_val) {
  std::vector<TropNum> c;
  c.reserve(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    c.push_back(b[j] * TropNum(Rational(-nat_val.of_factorial(j))));
  }
  return TropSeries(std::move(c), nat_val);
}

std::vector<TropNum> psi_trop_inverse(const TropSeries& s) {
  std::vector<TropNum> b;
  b.reserve(s.length());
  for (std::size_t j = 0; j < s.length(); ++j) {
    b.push_back(s[j] * TropNum(s.nat_valuation().of_factorial(j)));
  }
  return b;
}

BoolSeries sigma_to_grigoriev(const TropSeries& s) {
  BoolSeries out;
  out.length = s.length();
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (s[k].is_finite()) out.support.push_back(k);
  }
  return out;
}

TropNum sigma0(const Trop2& w) { return w.is_inf() ? TropNum::inf() : TropNum(w.first()); }

}  // namespace tropdiff
