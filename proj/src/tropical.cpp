#include "tropdiff/tropical.hpp"

#include "tropdiff/error.hpp"

namespace tropdiff {

namespace {

std::strong_ordering order_of(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

const Rational& TropNum::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "value() of tropical INF");
  return *value_;
}

TropNum operator+(const TropNum& a, const TropNum& b) {
  if (a.is_inf()) return b;
  if (b.is_inf()) return a;
  return *a.value_ <= *b.value_ ? a : b;
}

TropNum operator*(const TropNum& a, const TropNum& b) {
  if (a.is_inf() || b.is_inf()) return TropNum::inf();
  return TropNum(Rational(*a.value_ + *b.value_));
}

bool operator==(const TropNum& a, const TropNum& b) {
  if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const TropNum& a, const TropNum& b) {
  if (a.is_inf() && b.is_inf()) return std::strong_ordering::equal;
  if (a.is_inf()) return std::strong_ordering::greater;
  if (b.is_inf()) return std::strong_ordering::less;
  return order_of(cmp(*a.value_, *b.value_));
}

const Rational& Trop2::first() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "first() of tropical INF");
  return value_->first;
}

const Rational& Trop2::second() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "second() of tropical INF");
  return value_->second;
}

Trop2 operator+(const Trop2& a, const Trop2& b) { return (a <=> b) <= 0 ? a : b; }

Trop2 operator*(const Trop2& a, const Trop2& b) {
  if (a.is_inf() || b.is_inf()) return Trop2::inf();
  return Trop2(Rational(a.value_->first + b.value_->first),
               Rational(a.value_->second + b.value_->second));
}

bool operator==(const Trop2& a, const Trop2& b) {
  if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
  return a.value_->first == b.value_->first && a.value_->second == b.value_->second;
}

std::strong_ordering operator<=>(const Trop2& a, const Trop2& b) {
  if (a.is_inf() && b.is_inf()) return std::strong_ordering::equal;
  if (a.is_inf()) return std::strong_ordering::greater;
  if (b.is_inf()) return std::strong_ordering::less;
  if (int c = cmp(a.value_->first, b.value_->first); c != 0) return order_of(c);
  return order_of(cmp(a.value_->second, b.value_->second));
}

TropNum power(const TropNum& a, unsigned long k) {
  if (k == 0) return TropNum::zero();
  if (a.is_inf()) return a;
  return TropNum(Rational(a.value() * k));
}

Trop2 power(const Trop2& a, unsigned long k) {
  if (k == 0) return Trop2::zero();
  if (a.is_inf()) return a;
  return Trop2(Rational(a.first() * k), Rational(a.second() * k));
}

std::string to_string(const TropNum& a) { return a.is_inf() ? "inf" : to_string(a.value()); }

std::string to_string(const Trop2& a) {
  if (a.is_inf()) return "inf";
  return "(" + to_string(a.first()) + ", " + to_string(a.second()) + ")";
}

TropNum parse_tropnum(std::string_view text) {
  if (text == "inf") return TropNum::inf();
  return TropNum(parse_rational(text));
}

NatValuation NatValuation::padic(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  NatValuation v;
  v.prime_ = p;
  return v;
}

unsigned long NatValuation::prime() const {
  if (!prime_) throw Error(ErrorCode::TrivialBackend, "trivial valuation has no prime");
  return *prime_;
}

TropNum NatValuation::operator()(unsigned long n) const {
  if (n == 0) return TropNum::inf();
  if (!prime_) return TropNum::zero();
  return TropNum(padic_val(Integer(n), *prime_));
}

Rational NatValuation::of_factorial(unsigned long j) const {
  if (!prime_) return Rational(0);
  return Rational(factorial_val(j, *prime_));
}

std::string NatValuation::name() const {
  return prime_ ? "v_" + std::to_string(*prime_) : "trivial";
}

}  // namespace tropdiff
