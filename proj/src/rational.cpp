#include "tropdiff/rational.hpp"

#include "tropdiff/error.hpp"

#include <cctype>

namespace tropdiff {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorCode::TruncationExhausted: return "TruncationExhausted";
    case ErrorCode::TruncationAmbiguous: return "TruncationAmbiguous";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::BadBase: return "BadBase";
    case ErrorCode::TrivialBackend: return "TrivialBackend";
    case ErrorCode::NotAClassicalSolution: return "NotAClassicalSolution";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ZetaUnavailable: return "ZetaUnavailable";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') ++i;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else if (c == '/' && !seen_slash && digit_before) {
      seen_slash = true;
    } else {
      throw bad();
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) throw bad();
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  try {
    r = Rational(s);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
  if (r.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

long padic_val(const Integer& n, unsigned long p) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "p-adic valuation of 0");
  Integer rest;
  Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long padic_val(const Rational& r, unsigned long p) {
  if (r == 0) throw Error(ErrorCode::ZeroInput, "p-adic valuation of 0");
  return padic_val(r.get_num(), p) - padic_val(r.get_den(), p);
}

unsigned long digit_sum(unsigned long m, unsigned long p) {
  unsigned long s = 0;
  for (; m > 0; m /= p) s += m % p;
  return s;
}

long factorial_val(unsigned long m, unsigned long p) {
  return static_cast<long>((m - digit_sum(m, p)) / (p - 1));
}

long factorial_val_iterative(unsigned long m, unsigned long p) {
  long total = 0;
  for (unsigned long q = p; q <= m; q *= p) {
    total += static_cast<long>(m / q);
    if (q > m / p) break;
  }
  return total;
}

Integer factorial(unsigned long m) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), m);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

unsigned long reduce_mod(const Rational& r, unsigned long p) {
  Integer num = r.get_num() % Integer(p);
  if (num < 0) num += p;
  Integer den = r.get_den() % Integer(p);
  if (den == 0) {
    throw Error(ErrorCode::NegativeValuation, "denominator of " + to_string(r) + " divisible by " +
                                                  std::to_string(p));
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(p).get_mpz_t());
  Integer out = (num * inv) % Integer(p);
  return out.get_ui();
}

}  // namespace tropdiff
