#include "nadyn/parser.hpp"

#include <cctype>

namespace nadyn {

namespace {

struct Frac {
  SeriesPoly num;
  SeriesPoly den;
};

bool is_one_poly(const SeriesPoly& p) { return p.degree() == 0 && p[0].is_one(); }

Frac cancel_z(Frac f) {
  if (f.num.is_zero()) return {SeriesPoly(), SeriesPoly::constant(Series(1))};
  const int k = std::min(f.num.low_order(), f.den.low_order());
  if (k > 0) {
    f.num = f.num.unshifted(k);
    f.den = f.den.unshifted(k);
  }
  return f;
}

Frac add(const Frac& a, const Frac& b) {
  if (a.den == b.den) return cancel_z({a.num + b.num, a.den});
  return cancel_z({a.num * b.den + b.num * a.den, a.den * b.den});
}

Frac neg(const Frac& a) { return {-a.num, a.den}; }
Frac mul(const Frac& a, const Frac& b) {
  if (is_one_poly(a.den) && is_one_poly(b.den)) return {a.num * b.num, a.den};
  return cancel_z({a.num * b.num, a.den * b.den});
}

class Parser {
 public:
  Parser(const std::string& src, const ParseContext& ctx) : src_(src), ctx_(ctx) {}

  Frac parse() {
    skip();
    if (pos_ >= src_.size()) throw SyntaxError("empty expression", pos_ + 1);
    Frac f = expr();
    skip();
    if (pos_ < src_.size()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_ + 1);
    return f;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= src_.size()) throw SyntaxError(std::string("expected '") + c + "' at end of input", pos_ + 1);
      throw SyntaxError(std::string("expected '") + c + "'", pos_ + 1);
    }
    ++pos_;
  }
  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    return src_.substr(start, pos_ - start);
  }
  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  Frac constant(const Series& c) { return {SeriesPoly::constant(c), SeriesPoly::constant(Series(1))}; }

  Frac expr() {
    Frac acc = term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      const Frac rhs = term();
      acc = add(acc, c == '+' ? rhs : neg(rhs));
    }
  }

  Frac term() {
    Frac acc = unary();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t col = pos_ + 1;
      ++pos_;
      const Frac rhs = unary();
      if (c == '*') {
        acc = mul(acc, rhs);
      } else {
        if (rhs.num.is_zero()) throw SyntaxError("division by zero", col);
        acc = mul(acc, Frac{rhs.den, rhs.num});
      }
    }
  }

  Frac unary() {
    if (peek() == '-') {
      ++pos_;
      return neg(unary());
    }
    return factor();
  }

  Frac factor() {
    const std::size_t base_col = pos_ + 1;
    Frac b = base();
    if (peek() != '^') return b;
    ++pos_;
    const std::size_t exp_col = pos_ + 1;
    const Q e = exponent();
    return power(b, e, base_col, exp_col);
  }

  Frac base() {
    const char c = peek();
    const std::size_t col = pos_ + 1;
    if (c == '\0') throw SyntaxError("unexpected end of input", col);
    if (c == '(') {
      ++pos_;
      Frac f = expr();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class n(digits());
      return constant(Series(Scalar(ctx_.field, mpq_class(n))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string id = identifier();
      if (id == "z") return {SeriesPoly(std::vector<Series>{Series(), Series(1)}), SeriesPoly::constant(Series(1))};
      if (id == "t") return constant(Series::t_power(Q(1)));
      if (id == "s") return constant(Series(BaseElem::s()));
      if (id == "O") {
        expect('(');
        const std::size_t inner_col = pos_ + 1;
        const Frac f = expr();
        expect(')');
        const auto m = as_monomial(f);
        if (!m || !m->coef.is_one()) throw SyntaxError("O(...) expects a power of t", inner_col);
        return constant(Series::zero_to(m->exp));
      }
      auto it = ctx_.params.find(id);
      if (it != ctx_.params.end()) return constant(Series(Scalar(ctx_.field, it->second)));
      throw UnknownVariable(id, col);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", col);
  }

  // Exponent arithmetic over the rationals with bound identifiers.
  Q exponent() {
    const char c = peek();
    const std::size_t col = pos_ + 1;
    if (c == '-') {
      ++pos_;
      return -exponent();
    }
    if (c == '(') {
      ++pos_;
      const Q v = exp_expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Q(std::stoll(digits()));
    if (std::isalpha(static_cast<unsigned char>(c))) return exp_identifier();
    throw SyntaxError("expected exponent", col);
  }
  Q exp_identifier() {
    const std::size_t col = pos_ + 1;
    const std::string id = identifier();
    auto it = ctx_.params.find(id);
    if (it == ctx_.params.end()) throw UnknownVariable(id, col);
    return Q(it->second);
  }
  Q exp_expr() {
    Q acc = exp_term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      const Q rhs = exp_term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }
  Q exp_term() {
    Q acc = exp_power();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t col = pos_ + 1;
      ++pos_;
      const Q rhs = exp_power();
      if (c == '*') {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) throw SyntaxError("division by zero in exponent", col);
        acc = acc / rhs;
      }
    }
  }
  Q exp_power() {
    const Q b = exp_atom();
    if (peek() != '^') return b;
    ++pos_;
    const std::size_t col = pos_ + 1;
    const Q e = exp_power();
    if (!e.is_integer()) throw SyntaxError("exponent arithmetic needs integer powers", col);
    if (b.is_zero() && e.num() < 0) throw SyntaxError("division by zero in exponent", col);
    Q r(1);
    for (std::int64_t i = 0; i < (e.num() < 0 ? -e.num() : e.num()); ++i) r = r * b;
    return e.num() < 0 ? Q(1) / r : r;
  }
  Q exp_atom() {
    const char c = peek();
    const std::size_t col = pos_ + 1;
    if (c == '-') {
      ++pos_;
      return -exp_atom();
    }
    if (c == '(') {
      ++pos_;
      const Q v = exp_expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Q(std::stoll(digits()));
    if (std::isalpha(static_cast<unsigned char>(c))) return exp_identifier();
    if (c == '\0') throw SyntaxError("unexpected end of input", col);
    throw SyntaxError(std::string("unexpected '") + c + "' in exponent", col);
  }

  // A z-free value c * t^e (exact, single term).
  static std::optional<Series::Term> as_monomial(const Frac& f) {
    if (f.num.degree() != 0 || f.den.degree() != 0) return std::nullopt;
    const Series& n = f.num[0];
    const Series& d = f.den[0];
    if (!n.is_exact() || !d.is_exact() || n.terms().size() != 1 || d.terms().size() != 1) return std::nullopt;
    return Series::Term{n.terms()[0].exp - d.terms()[0].exp, n.terms()[0].coef / d.terms()[0].coef};
  }

  Frac power(const Frac& b, const Q& e, std::size_t base_col, std::size_t exp_col) {
    if (e.is_integer()) {
      std::int64_t k = e.num();
      Frac x = k < 0 ? Frac{b.den, b.num} : b;
      if (x.den.is_zero()) throw SyntaxError("negative power of zero", base_col);
      k = k < 0 ? -k : k;
      Frac acc = constant(Series(Scalar(ctx_.field, 1)));
      while (k > 0) {
        if (k & 1) acc = mul(acc, x);
        x = mul(x, x);
        k >>= 1;
      }
      return acc;
    }
    const auto m = as_monomial(b);
    if (!m) throw SyntaxError("fractional exponent needs a monomial in s and t", exp_col);
    BaseElem c;
    try {
      c = root_extract(m->coef, static_cast<unsigned>(e.den())).pow(e.num());
    } catch (const Unresolved&) {
      throw SyntaxError("fractional power of a coefficient without a root", base_col);
    }
    const Series r = Series::monomial(c, m->exp * e);
    if (r.exponent_denominator() > ctx_.precision.max_denominator ||
        c.exponent_denominator() > ctx_.precision.max_denominator)
      throw ExponentDenominatorOverflow(r.str());
    return constant(r);
  }

  const std::string& src_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

Series constant_value(const ParsedFraction& f, const PrecisionContext& pc, const std::string& src) {
  if (f.num.degree() > 0 || f.den.degree() > 0) throw SyntaxError("expected an expression free of z in '" + src + "'", 1);
  if (f.den.is_zero()) throw DivisionByZero("expression denominator is zero");
  return divide(f.num[0], f.den[0], pc);
}

}  // namespace

ParsedFraction parse_fraction(const std::string& src, const ParseContext& ctx) {
  Parser p(src, ctx);
  Frac f = p.parse();
  auto coerce = [&ctx](const Series& c) { return c.in_field(ctx.field); };
  return {f.num.map(coerce), f.den.map(coerce)};
}

SeriesMap parse_map(const std::string& src, const ParseContext& ctx) {
  const ParsedFraction f = parse_fraction(src, ctx);
  if (f.den.is_zero()) throw DivisionByZero("map denominator is zero");
  return make_series_map(ctx.field, f.num, f.den, ctx.precision);
}

ResidueMap parse_residue_map(const std::string& src, const ParseContext& ctx) {
  const ParsedFraction f = parse_fraction(src, ctx);
  auto res = [&src](const Series& c) {
    if (!c.is_exact()) throw SyntaxError("residue-level expression cannot carry O(...) in '" + src + "'", 1);
    for (const auto& term : c.terms())
      if (!term.exp.is_zero()) throw SyntaxError("residue-level expression cannot involve t in '" + src + "'", 1);
    return c.coefficient(Q(0));
  };
  if (f.den.is_zero()) throw DivisionByZero("map denominator is zero");
  return make_residue_map(ctx.field, f.num.map(res), f.den.map(res));
}

Series parse_series(const std::string& src, const ParseContext& ctx) {
  const Series x = constant_value(parse_fraction(src, ctx), ctx.precision, src);
  check_denominators(x, ctx.precision);
  return x;
}

SeriesPoint parse_point(const std::string& src, const ParseContext& ctx) {
  std::string trimmed = src;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
  if (trimmed == "inf" || trimmed == "infinity") return SeriesPoint::infinity();
  return SeriesPoint::affine(parse_series(src, ctx));
}

ResiduePoint parse_residue_point(const std::string& src, const ParseContext& ctx) {
  const SeriesPoint pt = parse_point(src, ctx);
  if (pt.is_infinity()) return ResiduePoint::infinity();
  const Series& x = pt.x();
  if (!x.is_exact() || x.valuation() < Valuation(Q(0)) || x.terms().size() > 1 ||
      (x.terms().size() == 1 && !x.terms()[0].exp.is_zero()))
    throw SyntaxError("expected a point free of t in '" + src + "'", 1);
  return ResiduePoint::affine(x.coefficient(Q(0)));
}

Q parse_rational(const std::string& src) {
  const auto slash = src.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(src, &used);
      if (src.find_first_not_of(" \t", used) != std::string::npos) throw SyntaxError("bad rational '" + src + "'", used + 1);
      return Q(n);
    }
    const long long n = std::stoll(src.substr(0, slash));
    const long long d = std::stoll(src.substr(slash + 1));
    if (d == 0) throw SyntaxError("zero denominator in '" + src + "'", slash + 2);
    return Q(n, d);
  } catch (const std::logic_error&) {
    throw SyntaxError("bad rational '" + src + "'", 1);
  }
}

}  // namespace nadyn
