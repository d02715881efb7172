#include "nadyn/base_field.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

#include "nadyn/errors.hpp"

namespace nadyn {

namespace {

Poly<Scalar> spread(const Poly<Scalar>& p, int k) {
  if (k == 1 || p.is_zero()) return p;
  std::vector<Scalar> c(static_cast<std::size_t>(p.degree()) * k + 1);
  for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i) * k] = p[i];
  return Poly<Scalar>(std::move(c));
}

Poly<Scalar> compress(const Poly<Scalar>& p, int g) {
  if (g == 1 || p.is_zero()) return p;
  std::vector<Scalar> c(static_cast<std::size_t>(p.degree() / g) + 1);
  for (int i = 0; i <= p.degree(); i += g) c[static_cast<std::size_t>(i / g)] = p[i];
  return Poly<Scalar>(std::move(c));
}

std::int64_t exponent_gcd(const Poly<Scalar>& p, std::int64_t g) {
  for (int i = 1; i <= p.degree() && g != 1; ++i)
    if (!p[i].is_zero()) g = std::gcd(g, static_cast<std::int64_t>(i));
  return g;
}

}  // namespace

BaseElem::BaseElem(const Scalar& c) {
  if (!c.is_zero()) num_ = Poly<Scalar>::constant(c);
}

BaseElem BaseElem::monomial(const Scalar& c, const Q& e) {
  if (c.is_zero()) return {};
  if (e.den() > INT32_MAX) throw std::overflow_error("BaseElem: exponent denominator too large");
  return canonical(Poly<Scalar>::constant(c), Poly<Scalar>::constant(Scalar(1)), e.num(),
                   static_cast<int>(e.den()));
}

BaseElem BaseElem::canonical(Poly<Scalar> num, Poly<Scalar> den, std::int64_t shift, int m) {
  if (den.is_zero()) throw DivisionByZero("zero denominator in base field");
  if (num.is_zero()) return {};
  int k = num.low_order();
  shift += k;
  num = num.unshifted(k);
  k = den.low_order();
  shift -= k;
  den = den.unshifted(k);
  if (den.degree() > 0) {
    Poly<Scalar> g = gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  const Scalar c = den[0];
  if (!c.is_one()) {
    const Scalar inv = c.inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  std::int64_t g = std::gcd(static_cast<std::int64_t>(m), std::abs(shift));
  g = exponent_gcd(num, g);
  g = exponent_gcd(den, g);
  BaseElem r;
  if (g > 1) {
    const int gi = static_cast<int>(g);
    r.num_ = compress(num, gi);
    r.den_ = compress(den, gi);
    r.shift_ = shift / g;
    r.m_ = m / gi;
  } else {
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.shift_ = shift;
    r.m_ = m;
  }
  return r;
}

BaseElem BaseElem::lifted(int m) const {
  if (m == m_) return *this;
  const int k = m / m_;
  BaseElem r;
  r.m_ = m;
  r.shift_ = shift_ * k;
  r.num_ = spread(num_, k);
  r.den_ = spread(den_, k);
  return r;
}

BaseElem BaseElem::in_field(GroundField f) const {
  if (is_zero()) return {};
  auto coerce = [f](const Scalar& c) { return c.in_field(f); };
  return canonical(num_.map(coerce), den_.map(coerce), shift_, m_);
}

bool BaseElem::is_one() const { return shift_ == 0 && num_.degree() == 0 && den_.degree() == 0 && num_[0].is_one(); }

GroundField BaseElem::field() const {
  for (const Scalar& c : num_.coeffs())
    if (c.field().p != 0) return c.field();
  for (const Scalar& c : den_.coeffs())
    if (c.field().p != 0) return c.field();
  return GroundField::rationals();
}

Q BaseElem::height() const {
  if (is_zero()) return Q(0);
  const std::int64_t dn = num_.degree() + std::max<std::int64_t>(shift_, 0);
  const std::int64_t dd = den_.degree() + std::max<std::int64_t>(-shift_, 0);
  return Q(std::max(dn, dd), m_);
}

BaseElem operator+(const BaseElem& a, const BaseElem& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int m = std::lcm(a.m_, b.m_);
  const BaseElem x = a.lifted(m);
  const BaseElem y = b.lifted(m);
  const std::int64_t e = std::min(x.shift_, y.shift_);
  const int ex = static_cast<int>(x.shift_ - e);
  const int ey = static_cast<int>(y.shift_ - e);
  if (x.den_.degree() == 0 && y.den_.degree() == 0)
    return BaseElem::canonical(x.num_.shifted(ex) + y.num_.shifted(ey), x.den_, e, m);
  if (x.den_ == y.den_)
    return BaseElem::canonical(x.num_.shifted(ex) + y.num_.shifted(ey), x.den_, e, m);
  return BaseElem::canonical((x.num_ * y.den_).shifted(ex) + (y.num_ * x.den_).shifted(ey), x.den_ * y.den_, e, m);
}

BaseElem operator*(const BaseElem& a, const BaseElem& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int m = std::lcm(a.m_, b.m_);
  const BaseElem x = a.lifted(m);
  const BaseElem y = b.lifted(m);
  return BaseElem::canonical(x.num_ * y.num_, x.den_ * y.den_, x.shift_ + y.shift_, m);
}

BaseElem BaseElem::operator-() const {
  BaseElem r = *this;
  r.num_ = -num_;
  return r;
}

BaseElem BaseElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of 0 in base field");
  return canonical(den_, num_, -shift_, m_);
}

BaseElem BaseElem::times_int(long k) const {
  BaseElem r = *this;
  r.num_ = num_.map([k](const Scalar& c) { return c.times_int(k); });
  if (r.num_.is_zero()) return {};
  return r;
}

BaseElem BaseElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  BaseElem base = *this;
  BaseElem acc(Scalar(field(), 1));
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const BaseElem& a, const BaseElem& b) {
  return a.m_ == b.m_ && a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
}

std::string format_power(const std::string& var, const Q& e) {
  if (e == Q(1)) return var;
  if (e.is_integer() && e.num() > 0) return var + "^" + e.str();
  return var + "^(" + e.str() + ")";
}

std::string format_sum(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, mono] : terms) {
    const bool neg = c.is_negative();
    const Scalar a = neg ? -c : c;
    std::string body;
    if (mono.empty())
      body = a.str();
    else if (a.is_one())
      body = mono;
    else
      body = a.str() + "*" + mono;
    if (first)
      out += (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace {

std::string laurent_str(const Poly<Scalar>& p, std::int64_t shift, int m) {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (int i = p.degree(); i >= 0; --i) {
    if (p[i].is_zero()) continue;
    const Q e(i + shift, m);
    terms.emplace_back(p[i], e.is_zero() ? std::string() : format_power("s", e));
  }
  return format_sum(terms);
}

}  // namespace

std::string BaseElem::str() const {
  if (is_zero()) return "0";
  if (den_.degree() == 0) return laurent_str(num_, shift_, m_);
  return "(" + laurent_str(num_, shift_, m_) + ")/(" + laurent_str(den_, 0, m_) + ")";
}

BaseElem BaseElem::frobenius_root(unsigned q) const {
  const std::uint32_t p = field().characteristic();
  unsigned k = q;
  while (p != 0 && k % p == 0) k /= p;
  if (p == 0 || k != 1) throw Unresolved("Frobenius root of order " + std::to_string(q));
  if (is_zero() || q == 1) return *this;
  if (static_cast<std::int64_t>(m_) * q > std::numeric_limits<int>::max()) throw Unresolved("exponent denominator overflow");
  return canonical(num_, den_, shift_, m_ * static_cast<int>(q));
}

BaseElem root_extract(const BaseElem& c, unsigned n) {
  if (n == 0) throw std::invalid_argument("root_extract: n must be positive");
  if (c.is_zero() || n == 1) return c;
  if (!c.is_monomial()) {
    const std::uint32_t p = c.field().characteristic();
    unsigned k = n;
    while (p != 0 && k % p == 0) k /= p;
    if (p != 0 && k == 1) return c.frobenius_root(n);
  }
  if (!c.is_monomial()) throw Unresolved("root of non-monomial " + c.str());
  const auto r = c.monomial_coefficient().nth_root(n);
  if (!r) throw Unresolved(std::to_string(n) + "-th root of coefficient " + c.monomial_coefficient().str());
  return BaseElem::monomial(*r, c.monomial_exponent() / Q(static_cast<std::int64_t>(n)));
}

BasePoly poly_gcd_over_base(const BasePoly& p, const BasePoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0)");
  return gcd(p, q);
}

int RootSet::resolved_count() const {
  int n = 0;
  for (const auto& r : roots) n += r.second;
  return n;
}

int RootSet::unresolved_count() const { return std::accumulate(unresolved_degrees.begin(), unresolved_degrees.end(), 0); }

namespace {

void add_root(RootSet& rs, const BaseElem& r, int mult) {
  for (auto& [x, k] : rs.roots) {
    if (x == r) {
      k += mult;
      return;
    }
  }
  rs.roots.emplace_back(r, mult);
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  n = std::labs(n);
  for (long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  return d;
}

// Candidate roots in the ground field for a squarefree polynomial with
// ground-constant coefficients.
std::vector<BaseElem> ground_candidates(const BasePoly& f) {
  std::vector<BaseElem> out;
  for (const BaseElem& c : f.coeffs())
    if (!c.is_constant()) return out;
  const GroundField F = [&] {
    for (const BaseElem& c : f.coeffs())
      if (c.field().p != 0) return c.field();
    return GroundField::rationals();
  }();
  if (F.p != 0) {
    if (F.p > 100000) return out;
    for (long x = 0; x < static_cast<long>(F.p); ++x) out.emplace_back(Scalar(F, x));
    return out;
  }
  // Rational root test after clearing denominators.
  mpz_class l = 1;
  for (const BaseElem& c : f.coeffs())
    if (!c.is_zero()) {
      const mpq_class q(c.monomial_coefficient().str());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    }
  auto int_coeff = [&](const BaseElem& c) -> mpz_class {
    if (c.is_zero()) return 0;
    mpq_class q(c.monomial_coefficient().str());
    q *= l;
    return q.get_num();
  };
  const mpz_class c0 = int_coeff(f[f.low_order()]);
  const mpz_class cd = int_coeff(f.leading());
  if (!c0.fits_slong_p() || !cd.fits_slong_p() || abs(c0) > 1000000 || abs(cd) > 1000000) return out;
  for (long a : divisors(c0.get_si()))
    for (long b : divisors(cd.get_si())) {
      out.emplace_back(Scalar::rational(a, b));
      out.emplace_back(Scalar::rational(-a, b));
    }
  return out;
}

void split(const BasePoly& f, RootSet& rs, std::uint32_t p);

// Monomial candidates c*s^e: e runs over the root valuations read off the
// s-adic Newton polygon, c over ground-field roots of the matching edge polynomial.
std::vector<BaseElem> monomial_candidates(const BasePoly& f) {
  std::vector<BaseElem> out;
  struct Pt {
    int x;
    Q y;
  };
  std::vector<Pt> pts;
  for (int i = 0; i <= f.degree(); ++i)
    if (!f[i].is_zero()) pts.push_back({i, Q(f[i].shift(), f[i].exponent_denominator())});
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& a = hull.back();
      if (Q(a.x - o.x) * (q.y - o.y) - (a.y - o.y) * Q(q.x - o.x) > Q(0)) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const Q e = (hull[k].y - hull[k + 1].y) * Q(1, hull[k + 1].x - hull[k].x);
    std::vector<BaseElem> edge(static_cast<std::size_t>(hull[k + 1].x - hull[k].x) + 1);
    for (const Pt& q : pts) {
      if (q.x < hull[k].x || q.x > hull[k + 1].x) continue;
      if (q.y + e * Q(q.x) != hull[k].y + e * Q(hull[k].x)) continue;
      edge[static_cast<std::size_t>(q.x - hull[k].x)] = BaseElem(f[q.x].numerator()[0]);
    }
    const BasePoly E(std::move(edge));
    for (const BaseElem& c : ground_candidates(E))
      if (!c.is_zero() && E.eval(c).is_zero()) out.push_back(BaseElem::monomial(c.monomial_coefficient(), e));
  }
  return out;
}


void split_squarefree(BasePoly f, RootSet& rs) {
  const int d = f.degree();
  std::vector<BaseElem> candidates;
  bool binomial = true;
  for (int i = 1; i < d; ++i)
    if (!f[i].is_zero()) binomial = false;
  if (binomial && !f[0].is_zero()) {
    const BaseElem c = -f[0] / f[d];
    try {
      const BaseElem r0 = root_extract(c, static_cast<unsigned>(d));
      for (const BaseElem& zeta : ground_candidates(BasePoly::monomial(BaseElem(1), d) - BasePoly::constant(BaseElem(1))))
        candidates.push_back(r0 * zeta);
      candidates.push_back(r0);
      candidates.push_back(-r0);
    } catch (const Unresolved&) {
    }
  } else {
    candidates = monomial_candidates(f);
  }
  for (const BaseElem& r : candidates) {
    if (f.degree() <= 0) break;
    if (f.eval(r).is_zero()) {
      add_root(rs, r, 1);
      f = exact_div(f, BasePoly(std::vector<BaseElem>{-r, BaseElem(1)}));
    }
  }
  if (f.degree() == 1) {
    add_root(rs, -f[0] / f[1], 1);
  } else if (f.degree() > 1) {
    rs.unresolved_degrees.push_back(f.degree());
  }
}

void split(const BasePoly& f, RootSet& rs, std::uint32_t p) {
  const int d = f.degree();
  if (d <= 0) return;
  const int k = f.low_order();
  if (k > 0) {
    add_root(rs, BaseElem(), k);
    split(f.unshifted(k), rs, p);
    return;
  }
  if (d == 1) {
    add_root(rs, -f[0] / f[1], 1);
    return;
  }
  const BasePoly df = f.derivative();
  if (df.is_zero()) {
    // f(z) = V(z^p): roots are p-th roots of the roots of V.
    std::vector<BaseElem> v(static_cast<std::size_t>(d / static_cast<int>(p)) + 1);
    for (int i = 0; i <= d; i += static_cast<int>(p)) v[static_cast<std::size_t>(i) / p] = f[i];
    RootSet sub;
    split(BasePoly(std::move(v)), sub, p);
    for (const auto& [r, mult] : sub.roots) {
      try {
        add_root(rs, root_extract(r, p), mult * static_cast<int>(p));
      } catch (const Unresolved&) {
        rs.unresolved_degrees.push_back(mult * static_cast<int>(p));
      }
    }
    for (int u : sub.unresolved_degrees) rs.unresolved_degrees.push_back(u * static_cast<int>(p));
    return;
  }
  const BasePoly g = gcd(f, df);
  if (g.degree() > 0) {
    split(g, rs, p);
    split(exact_div(f, g), rs, p);
    return;
  }
  split_squarefree(f, rs);
}

}  // namespace

RootSet find_roots(const BasePoly& f) {
  RootSet rs;
  std::uint32_t p = 0;
  for (const BaseElem& c : f.coeffs())
    if (c.field().p != 0) p = c.field().p;
  split(f, rs, p);
  return rs;
}

}  // namespace nadyn
