#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nadyn/errors.hpp"

namespace nadyn {

/// Coefficients that are only known to a precision (Puiseux series) are
/// trimmed only when exactly zero; everything else trims on is_zero().
template <class C>
bool is_trim_zero(const C& c) {
  if constexpr (requires { c.is_exact_zero(); })
    return c.is_exact_zero();
  else
    return c.is_zero();
}

/// Dense univariate polynomial over a coefficient ring C, lowest degree first.
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(C c) { return Poly(std::vector<C>{std::move(c)}); }
  static Poly monomial(C c, int k) {
    std::vector<C> v(static_cast<std::size_t>(k) + 1);
    v.back() = std::move(c);
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<C>& coeffs() const { return c_; }
  [[nodiscard]] const C& operator[](int i) const {
    static const C zero{};
    return (i < 0 || i > degree()) ? zero : c_[static_cast<std::size_t>(i)];
  }
  [[nodiscard]] const C& leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  /// Index of the lowest coefficient that is not (trim-)zero; -1 for zero.
  [[nodiscard]] int low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_trim_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  void set(int i, C v) {
    if (i < 0) throw std::out_of_range("Poly::set");
    if (i > degree()) c_.resize(static_cast<std::size_t>(i) + 1);
    c_[static_cast<std::size_t>(i)] = std::move(v);
    trim();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<C> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r[i] = a.c_[i] + b.c_[i];
      else
        r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
    }
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    std::vector<C> r;
    r.reserve(c_.size());
    for (const C& x : c_) r.push_back(-x);
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_trim_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (is_trim_zero(b.c_[j])) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  [[nodiscard]] Poly scaled(const C& s) const {
    std::vector<C> r;
    r.reserve(c_.size());
    for (const C& x : c_) r.push_back(x * s);
    return Poly(std::move(r));
  }
  /// Multiplication by z^k.
  [[nodiscard]] Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<C> r(static_cast<std::size_t>(k));
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r));
  }
  /// Division by z^k; the k lowest coefficients are dropped.
  [[nodiscard]] Poly unshifted(int k) const {
    if (k >= static_cast<int>(c_.size())) return {};
    return Poly(std::vector<C>(c_.begin() + k, c_.end()));
  }

  [[nodiscard]] Poly derivative() const {
    std::vector<C> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i].times_int(static_cast<long>(i)));
    return Poly(std::move(r));
  }

  [[nodiscard]] C eval(const C& x) const {
    C acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// this(inner(z)).
  [[nodiscard]] Poly compose(const Poly& inner) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  /// Coefficients transformed one by one (e.g. residues, substitutions).
  template <class F>
  [[nodiscard]] auto map(F&& f) const {
    using R = decltype(f(std::declval<const C&>()));
    std::vector<R> r;
    r.reserve(c_.size());
    for (const C& x : c_) r.push_back(f(x));
    return Poly<R>(std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && is_trim_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class C>
std::pair<Poly<C>, Poly<C>> divmod(const Poly<C>& a, const Poly<C>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<C> rem = a.coeffs();
  const int db = b.degree();
  const C inv_lead = b.leading().inverse();
  if (a.degree() < db) return {Poly<C>{}, a};
  std::vector<C> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    const C& top = rem[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    const C factor = top * inv_lead;
    quo[static_cast<std::size_t>(i - db)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= factor * b[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<C>(std::move(quo)), Poly<C>(std::move(rem))};
}

template <class C>
Poly<C> make_monic(const Poly<C>& a) {
  if (a.is_zero()) return a;
  return a.scaled(a.leading().inverse());
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
template <class C>
Poly<C> gcd(Poly<C> a, Poly<C> b) {
  while (!b.is_zero()) {
    Poly<C> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Quotient of an exact division; throws std::logic_error on a nonzero remainder.
template <class C>
Poly<C> exact_div(const Poly<C>& a, const Poly<C>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

}  // namespace nadyn
