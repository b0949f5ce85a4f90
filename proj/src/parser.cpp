#include "tropdiff/parser.hpp"

#include "tropdiff/error.hpp"

#include <cctype>
#include <utility>

namespace tropdiff {

namespace {

using Kind = SyntaxTree::Kind;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  SyntaxTree parse() {
    SyntaxTree e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  static SyntaxTree node(Kind k, std::size_t pos) {
    SyntaxTree t;
    t.kind = k;
    t.position = pos;
    return t;
  }

  static SyntaxTree binary(Kind k, SyntaxTree lhs, SyntaxTree rhs, std::size_t pos) {
    SyntaxTree t = node(k, pos);
    t.children.push_back(std::move(lhs));
    t.children.push_back(std::move(rhs));
    return t;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool at_digit() const {
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected digits");
    return std::string(src_.substr(start, pos_ - start));
  }

  unsigned long small_integer() {
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.size() > 9) throw SyntaxError(start, "integer too large: " + d);
    return std::stoul(d);
  }

  SyntaxTree expr() {
    skip_ws();
    const std::size_t start = pos_;
    SyntaxTree lhs;
    if (peek('-')) {
      ++pos_;
      SyntaxTree neg = node(Kind::Negate, start);
      neg.children.push_back(term());
      lhs = std::move(neg);
    } else {
      lhs = term();
    }
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      if (peek('+')) {
        ++pos_;
        lhs = binary(Kind::Sum, std::move(lhs), term(), at);
      } else if (peek('-')) {
        ++pos_;
        lhs = binary(Kind::Difference, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  SyntaxTree term() {
    SyntaxTree lhs = factor();
    while (peek('*')) {
      const std::size_t at = pos_++;
      lhs = binary(Kind::Product, std::move(lhs), factor(), at);
    }
    return lhs;
  }

  SyntaxTree factor() {
    SyntaxTree base = atom();
    if (peek('^')) {
      const std::size_t at = pos_++;
      skip_ws();
      if (!at_digit()) throw SyntaxError(pos_, "expected integer exponent after '^'");
      SyntaxTree pow = node(Kind::Power, at);
      pow.exponent = small_integer();
      pow.children.push_back(std::move(base));
      return pow;
    }
    return base;
  }

  SyntaxTree atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text = digits();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        if (!at_digit()) throw SyntaxError(pos_, "expected denominator");
        text += "/" + digits();
      }
      SyntaxTree t = node(Kind::Number, start);
      try {
        t.number = parse_rational(text);
      } catch (const Error&) {
        throw SyntaxError(start, "bad rational '" + text + "'");
      }
      if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
        throw SyntaxError(pos_, "implicit multiplication is not allowed; use '*'");
      }
      return t;
    }
    if (c == '(') {
      ++pos_;
      SyntaxTree inner = expr();
      if (!peek(')')) throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isalpha(static_cast<unsigned char>(src_[end]))) ++end;
      const std::string_view word = src_.substr(pos_, end - pos_);
      if (word == "zeta" || word == "t" || word == "p") {
        pos_ = end;
        if (at_digit()) throw SyntaxError(pos_, "unexpected digits after '" + std::string(word) + "'");
        return node(word == "zeta" ? Kind::Zeta : word == "t" ? Kind::T : Kind::Prime, start);
      }
      if (word == "x") {
        pos_ = end;
        return variable(start);
      }
      throw SyntaxError(start, "unknown identifier '" + std::string(word) + "'");
    }
    throw SyntaxError(start, std::string("unexpected '") + c + "'");
  }

  SyntaxTree variable(std::size_t start) {
    SyntaxTree v = node(Kind::Variable, start);
    if (at_digit()) {
      const std::size_t at = pos_;
      v.var_index = static_cast<unsigned>(small_integer());
      if (v.var_index == 0) throw SyntaxError(at, "variables are numbered from 1");
    }
    if (pos_ < src_.size() && src_[pos_] == '\'') {
      while (pos_ < src_.size() && src_[pos_] == '\'') {
        ++v.var_order;
        ++pos_;
      }
    } else if (src_.substr(pos_, 2) == "^(") {
      pos_ += 2;
      skip_ws();
      v.var_order = static_cast<unsigned>(small_integer());
      if (!peek(')')) throw SyntaxError(pos_, "expected ')' closing derivative order");
      ++pos_;
    }
    return v;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Precedence levels for minimal parenthesization.
int level(const SyntaxTree& t) {
  switch (t.kind) {
    case Kind::Sum:
    case Kind::Difference: return 1;
    case Kind::Negate: return 2;
    case Kind::Product: return 3;
    case Kind::Power: return 4;
    default: return 5;
  }
}

std::string derivative_suffix(unsigned order) {
  if (order <= 3) return std::string(order, '\'');
  return "^(" + std::to_string(order) + ")";
}

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

}  // namespace

SyntaxTree parse_expression(std::string_view src) { return Parser(src).parse(); }

std::string print_tree(const SyntaxTree& t) {
  switch (t.kind) {
    case Kind::Number: return to_string(t.number);
    case Kind::Zeta: return "zeta";
    case Kind::Prime: return "p";
    case Kind::T: return "t";
    case Kind::Variable:
      return "x" + (t.var_index ? std::to_string(t.var_index) : std::string()) +
             derivative_suffix(t.var_order);
    case Kind::Sum:
    case Kind::Difference: {
      const auto& rhs = t.children[1];
      return print_tree(t.children[0]) + (t.kind == Kind::Sum ? " + " : " - ") +
             wrap_if(level(rhs) <= 2, print_tree(rhs));
    }
    case Kind::Negate: return "-" + wrap_if(level(t.children[0]) <= 2, print_tree(t.children[0]));
    case Kind::Product: {
      const auto& lhs = t.children[0];
      const auto& rhs = t.children[1];
      return wrap_if(level(lhs) < 3, print_tree(lhs)) + "*" + wrap_if(level(rhs) <= 3, print_tree(rhs));
    }
    case Kind::Power: {
      const auto& base = t.children[0];
      // A negative rational base would read as a subtraction, and a derivative
      // in ^(j) form followed by ^k stays unambiguous.
      return wrap_if(level(base) < 5, print_tree(base)) + "^" + std::to_string(t.exponent);
    }
  }
  return {};
}

namespace {

struct Evaluated {
  DiffPoly poly;
  unsigned long t_degree = 0;  // upper bound on the t-degree of coefficients
};

Evaluated evaluate(const SyntaxTree& t, const ParseContext& ctx) {
  const Backend& b = ctx.backend;
  const std::size_t len = ctx.truncation + 1;
  auto constant = [&](const FieldElem& c) {
    return DiffPoly::constant(PowerSeries::constant(c, len), ctx.nvars);
  };
  switch (t.kind) {
    case Kind::Number: return {constant(FieldElem::from_rational(b, t.number)), 0};
    case Kind::Zeta:
      if (!b.has_zeta()) {
        throw Error(ErrorCode::ZetaUnavailable,
                    "'zeta' at offset " + std::to_string(t.position) + " needs the Eisenstein backend");
      }
      return {constant(FieldElem::zeta(b)), 0};
    case Kind::Prime:
      if (b.kind() == BackendKind::RationalTrivial) {
        throw Error(ErrorCode::InvalidArgument, "'p' is undefined for the trivial backend");
      }
      return {constant(FieldElem::from_rational(b, Rational(static_cast<long>(b.prime())))), 0};
    case Kind::T:
      return {DiffPoly::constant(PowerSeries::monomial(FieldElem::one(b), 1, len), ctx.nvars), 1};
    case Kind::Variable: {
      unsigned index = t.var_index;
      if (index == 0) {
        if (ctx.nvars != 1) {
          throw Error(ErrorCode::UnknownVariable,
                      "bare 'x' is ambiguous with " + std::to_string(ctx.nvars) + " variables");
        }
        index = 1;
      }
      if (index > ctx.nvars) {
        throw Error(ErrorCode::UnknownVariable, "x" + std::to_string(index) + " with " +
                                                    std::to_string(ctx.nvars) + " variables");
      }
      return {DiffPoly::variable(b, ctx.nvars, len, Var{index - 1, t.var_order}), 0};
    }
    case Kind::Sum:
    case Kind::Difference: {
      Evaluated lhs = evaluate(t.children[0], ctx);
      Evaluated rhs = evaluate(t.children[1], ctx);
      return {t.kind == Kind::Sum ? lhs.poly + rhs.poly : lhs.poly - rhs.poly,
              std::max(lhs.t_degree, rhs.t_degree)};
    }
    case Kind::Negate: {
      Evaluated inner = evaluate(t.children[0], ctx);
      return {-inner.poly, inner.t_degree};
    }
    case Kind::Product: {
      Evaluated lhs = evaluate(t.children[0], ctx);
      Evaluated rhs = evaluate(t.children[1], ctx);
      return {lhs.poly * rhs.poly, lhs.t_degree + rhs.t_degree};
    }
    case Kind::Power: {
      Evaluated base = evaluate(t.children[0], ctx);
      Evaluated out{constant(FieldElem::one(b)), 0};
      for (unsigned long k = 0; k < t.exponent; ++k) {
        out.poly = out.poly * base.poly;
        out.t_degree += base.t_degree;
        if (out.t_degree > ctx.truncation && base.t_degree > 0) break;
      }
      return out;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad syntax tree");
}

std::string rational_magnitude(const Rational& r) { return to_string(Rational(abs(r))); }

// Joins signed terms "a", "-b" into "a - b".
class TermJoiner {
 public:
  void add(bool negative, const std::string& body) {
    if (out_.empty()) {
      out_ = (negative ? "-" : "") + body;
    } else {
      out_ += (negative ? " - " : " + ") + body;
    }
  }
  std::string str() const { return out_.empty() ? "0" : out_; }

 private:
  std::string out_;
};

std::string join_factors(const std::vector<std::string>& factors) {
  if (factors.empty()) return "1";
  std::string s;
  for (const auto& f : factors) s += (s.empty() ? "" : "*") + f;
  return s;
}

// Adds r * zeta^i * t^k * monomial as one signed term.
void add_part(TermJoiner& out, const Rational& r, std::size_t zeta_power, std::size_t t_power,
              const std::string& monomial) {
  std::vector<std::string> factors;
  const bool bare = zeta_power == 0 && t_power == 0 && monomial.empty();
  if (abs(r) != 1 || bare) factors.push_back(rational_magnitude(r));
  if (zeta_power == 1) factors.push_back("zeta");
  if (zeta_power > 1) factors.push_back("zeta^" + std::to_string(zeta_power));
  if (t_power == 1) factors.push_back("t");
  if (t_power > 1) factors.push_back("t^" + std::to_string(t_power));
  if (!monomial.empty()) factors.push_back(monomial);
  out.add(r < 0, join_factors(factors));
}

}  // namespace

DiffPoly to_diffpoly(const SyntaxTree& tree, const ParseContext& ctx) {
  Evaluated e = evaluate(tree, ctx);
  if (e.t_degree > ctx.truncation) {
    throw Error(ErrorCode::TruncationExhausted,
                "coefficient t-degree up to " + std::to_string(e.t_degree) +
                    " exceeds truncation " + std::to_string(ctx.truncation));
  }
  return std::move(e.poly);
}

DiffPoly parse_poly(std::string_view src, const ParseContext& ctx) {
  return to_diffpoly(parse_expression(src), ctx);
}

std::string print_monomial(const ExponentMatrix& m, unsigned nvars) {
  std::vector<std::string> factors;
  for (const auto& [v, e] : m.entries()) {
    std::string f = "x" + (nvars == 1 ? std::string() : std::to_string(v.index + 1)) +
                    derivative_suffix(v.order);
    if (e > 1) f += "^" + std::to_string(e);
    factors.push_back(std::move(f));
  }
  if (factors.empty()) return {};
  return join_factors(factors);
}

std::string print_poly(const DiffPoly& f) {
  TermJoiner out;
  for (const auto& [m, c] : f.terms()) {
    const std::string mono = print_monomial(m, f.nvars());
    for (std::size_t k = 0; k < c.length(); ++k) {
      const auto& coords = c[k].coeffs();
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) add_part(out, coords[i], i, k, mono);
      }
    }
  }
  return out.str();
}

std::string print_poly(const ConstPoly& g) {
  TermJoiner out;
  for (const auto& [m, c] : g.terms) {
    const std::string mono = print_monomial(m, g.nvars);
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
      if (c.coeffs()[i] != 0) add_part(out, c.coeffs()[i], i, 0, mono);
    }
  }
  return out.str();
}

std::string print_poly(const TropDiffPoly& g) {
  std::string out;
  for (const auto& [m, w] : g.terms) {
    const std::string mono = print_monomial(m, g.nvars);
    std::string term;
    if (mono.empty()) {
      term = to_string(w);
    } else if (w == Trop2::zero()) {
      term = mono;
    } else {
      term = to_string(w) + "*" + mono;
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string print_poly(const TropPoly1& g) {
  std::string out;
  for (const auto& [m, w] : g.terms) {
    const std::string mono = print_monomial(m, g.nvars);
    std::string term;
    if (mono.empty()) {
      term = to_string(w);
    } else if (w == TropNum::zero()) {
      term = mono;
    } else {
      term = to_string(w) + "*" + mono;
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string print_poly(const ResiduePoly& g) {
  TermJoiner out;
  for (const auto& [m, c] : g.terms) add_part(out, c.value(), 0, 0, print_monomial(m, g.nvars));
  return out.str();
}

}  // namespace tropdiff
