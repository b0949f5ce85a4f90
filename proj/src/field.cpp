#include "tropdiff/field.hpp"

#include "tropdiff/error.hpp"

#include <utility>

namespace tropdiff {

Backend Backend::trivial() { return Backend(BackendKind::RationalTrivial, 0); }

Backend Backend::padic(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return Backend(BackendKind::RationalPadic, p);
}

Backend Backend::eisenstein(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return Backend(BackendKind::Eisenstein, p);
}

std::size_t Backend::dimension() const { return kind_ == BackendKind::Eisenstein ? p_ - 1 : 1; }

long Backend::ramification() const {
  return kind_ == BackendKind::Eisenstein ? static_cast<long>(p_ - 1) : 1;
}

NatValuation Backend::nat_valuation() const {
  return kind_ == BackendKind::RationalTrivial ? NatValuation::trivial() : NatValuation::padic(p_);
}

std::string Backend::name() const {
  switch (kind_) {
    case BackendKind::RationalTrivial: return "trivial";
    case BackendKind::RationalPadic: return "padic(" + std::to_string(p_) + ")";
    case BackendKind::Eisenstein: return "eisenstein(" + std::to_string(p_) + ")";
  }
  return "?";
}

namespace {

void require_same(const FieldElem& a, const FieldElem& b) {
  if (!(a.backend() == b.backend())) {
    throw Error(ErrorCode::BackendMismatch, a.backend().name() + " vs " + b.backend().name());
  }
}

}  // namespace

FieldElem FieldElem::zero(const Backend& b) {
  return FieldElem(b, std::vector<Rational>(b.dimension(), Rational(0)));
}

FieldElem FieldElem::one(const Backend& b) { return from_rational(b, Rational(1)); }

FieldElem FieldElem::from_rational(const Backend& b, Rational r) {
  FieldElem x = zero(b);
  x.coeffs_[0] = std::move(r);
  return x;
}

FieldElem FieldElem::from_coeffs(const Backend& b, std::vector<Rational> coeffs) {
  if (coeffs.size() > b.dimension()) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(coeffs.size()) + " coordinates for " + b.name());
  }
  coeffs.resize(b.dimension(), Rational(0));
  return FieldElem(b, std::move(coeffs));
}

FieldElem FieldElem::zeta(const Backend& b) {
  if (!b.has_zeta()) throw Error(ErrorCode::ZetaUnavailable, "zeta needs the Eisenstein backend");
  // p = 2: zeta^1 = -2 is rational.
  if (b.prime() == 2) return from_rational(b, Rational(-2));
  FieldElem z = zero(b);
  z.coeffs_[1] = 1;
  return z;
}

FieldElem FieldElem::uniformizer(const Backend& b) {
  switch (b.kind()) {
    case BackendKind::Eisenstein: return zeta(b);
    case BackendKind::RationalPadic: return from_rational(b, Rational(static_cast<long>(b.prime())));
    case BackendKind::RationalTrivial: break;
  }
  throw Error(ErrorCode::TrivialBackend, "the trivial valuation has no uniformizer");
}

bool FieldElem::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  FieldElem out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  FieldElem out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] -= b.coeffs_[i];
  return out;
}

FieldElem FieldElem::operator-() const {
  FieldElem out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  const std::size_t d = a.coeffs_.size();
  if (d == 1) return FieldElem(a.backend_, {Rational(a.coeffs_[0] * b.coeffs_[0])});
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  // zeta^d = -p
  const Rational minus_p(-static_cast<long>(a.backend_.prime()));
  for (std::size_t k = prod.size() - 1; k >= d; --k) prod[k - d] += minus_p * prod[k];
  prod.resize(d);
  return FieldElem(a.backend_, std::move(prod));
}

FieldElem operator*(const FieldElem& a, const Rational& r) {
  FieldElem out = a;
  for (auto& c : out.coeffs_) c *= r;
  return out;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
  const std::size_t d = coeffs_.size();
  if (d == 1) return FieldElem(backend_, {Rational(1 / coeffs_[0])});
  // Solve M y = e_0 where column j of M is this * zeta^j.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  FieldElem col = *this;
  const FieldElem z = zeta(backend_);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    col = col * z;
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    while (pivot < d && m[pivot][c] == 0) ++pivot;
    if (pivot == d) throw Error(ErrorCode::DivisionByZero, "singular multiplication matrix");
    std::swap(m[c], m[pivot]);
    const Rational lead = m[c][c];
    for (auto& v : m[c]) v /= lead;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  return FieldElem(backend_, std::move(y));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return a * b.inverse();
}

FieldElem FieldElem::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElem result = one(backend_);
  FieldElem base = *this;
  for (unsigned long e = static_cast<unsigned long>(k); e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  return a.backend_ == b.backend_ && a.coeffs_ == b.coeffs_;
}

std::string to_string(const FieldElem& x) {
  if (x.coeffs().size() == 1) return to_string(x.coeffs()[0]);
  std::string out;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rational& c = x.coeffs()[i];
    if (c == 0) continue;
    std::string term = to_string(c);
    if (i == 1) term += "*zeta";
    if (i > 1) term += "*zeta^" + std::to_string(i);
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

TropNum field_val(const FieldElem& x) {
  if (x.is_zero()) return TropNum::inf();
  const Backend& b = x.backend();
  if (b.kind() == BackendKind::RationalTrivial) return TropNum::zero();
  const long e = b.ramification();
  TropNum best;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rational& c = x.coeffs()[i];
    if (c == 0) continue;
    best += TropNum(Rational(Rational(padic_val(c, b.prime())) + ratio(static_cast<long>(i), e)));
  }
  return best;
}

SectionMonomial section_phi(const Trop2& w, const Backend& b) {
  if (w.is_inf()) throw Error(ErrorCode::InvalidArgument, "section of INF is 0, not a monomial");
  if (w.first().get_den() != 1) {
    throw Error(ErrorCode::NonIntegralExponent, "t-exponent " + to_string(w.first()));
  }
  const long t_exp = w.first().get_num().get_si();
  if (b.kind() == BackendKind::RationalTrivial) {
    if (w.second() != 0) {
      throw Error(ErrorCode::NonIntegralExponent,
                  "trivial value group is {0}, got " + to_string(w.second()));
    }
    return {t_exp, FieldElem::one(b)};
  }
  const Rational scaled = w.second() * b.ramification();
  if (scaled.get_den() != 1) {
    throw Error(ErrorCode::NonIntegralExponent,
                to_string(w.second()) + " not in the value group of " + b.name());
  }
  return {t_exp, FieldElem::uniformizer(b).pow(scaled.get_num().get_si())};
}

ResidueElem::ResidueElem(unsigned long characteristic, Rational value)
    : char_(characteristic), value_(std::move(value)) {
  if (char_ != 0) value_ = Rational(static_cast<long>(reduce_mod(value_, char_)));
}

namespace {

void require_same(const ResidueElem& a, const ResidueElem& b) {
  if (a.characteristic() != b.characteristic()) {
    throw Error(ErrorCode::BackendMismatch, "residue fields of different characteristic");
  }
}

}  // namespace

ResidueElem operator+(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  return {a.char_, Rational(a.value_ + b.value_)};
}

ResidueElem operator-(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  return {a.char_, Rational(a.value_ - b.value_)};
}

ResidueElem operator*(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  return {a.char_, Rational(a.value_ * b.value_)};
}

ResidueElem operator/(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "residue division by 0");
  return {a.char_, Rational(a.value_ / b.value_)};
}

ResidueElem ResidueElem::operator-() const { return {char_, Rational(-value_)}; }

bool operator==(const ResidueElem& a, const ResidueElem& b) {
  return a.char_ == b.char_ && a.value_ == b.value_;
}

std::string to_string(const ResidueElem& x) { return to_string(x.value()); }

ResidueElem residue(const FieldElem& x) {
  const Backend& b = x.backend();
  const TropNum v = field_val(x);
  if (v.is_finite() && v.value() < 0) {
    throw Error(ErrorCode::NegativeValuation, "residue of " + to_string(x));
  }
  // For Eisenstein elements of nonnegative valuation every c_i is p-integral
  // and c_i zeta^i lies in the maximal ideal for i > 0.
  return ResidueElem(b.prime(), x.coeffs()[0]);
}

ResidueElem angular_component(const FieldElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "angular component of 0");
  const Backend& b = x.backend();
  switch (b.kind()) {
    case BackendKind::RationalTrivial: return ResidueElem(0, x.coeffs()[0]);
    case BackendKind::RationalPadic: {
      const Rational& c = x.coeffs()[0];
      const long k = padic_val(c, b.prime());
      Integer pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), b.prime(), static_cast<unsigned long>(k < 0 ? -k : k));
      return ResidueElem(b.prime(), k >= 0 ? Rational(c / pk) : Rational(c * pk));
    }
    case BackendKind::Eisenstein: break;
  }
  // x * zeta^-(k(p-1) + i0) has residue c_{i0} / (-p)^k, where i0 attains v(x).
  const long e = b.ramification();
  std::size_t i0 = 0;
  Rational best;
  bool found = false;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rational& c = x.coeffs()[i];
    if (c == 0) continue;
    Rational v = Rational(padic_val(c, b.prime())) + ratio(static_cast<long>(i), e);
    if (!found || v < best) {
      best = v;
      i0 = i;
      found = true;
    }
  }
  const Rational& c = x.coeffs()[i0];
  const long k = padic_val(c, b.prime());
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), b.prime(), static_cast<unsigned long>(k < 0 ? -k : k));
  Rational scale = k >= 0 ? Rational(pk) : Rational(1, 1) / Rational(pk);
  if (k % 2 != 0) scale = -scale;
  return ResidueElem(b.prime(), Rational(c / scale));
}

}  // namespace tropdiff
