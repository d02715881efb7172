#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nadyn {

/// Small exact rational used for exponents and valuations.
/// Overflow of the 64-bit representation throws std::overflow_error.
class Q {
 public:
  constexpr Q() = default;
  constexpr Q(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Q(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }

  /// Largest integer not exceeding the value.
  [[nodiscard]] std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  [[nodiscard]] std::int64_t ceil() const { return -Q(-num_, den_).floor(); }

  friend Q operator+(const Q& a, const Q& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Q operator-(const Q& a, const Q& b) { return a + (-b); }
  friend Q operator*(const Q& a, const Q& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Q operator/(const Q& a, const Q& b) {
    if (b.num_ == 0) throw std::domain_error("Q: division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Q operator-() const { return Q::raw(-num_, den_); }
  Q& operator+=(const Q& o) { return *this = *this + o; }
  Q& operator-=(const Q& o) { return *this = *this - o; }
  Q& operator*=(const Q& o) { return *this = *this * o; }

  friend bool operator==(const Q& a, const Q& b) = default;
  friend std::strong_ordering operator<=>(const Q& a, const Q& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  /// "3", "-1/2"
  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Q& q) { return os << q.str(); }

 private:
  static Q raw(std::int64_t n, std::int64_t d) {
    Q q;
    q.num_ = n;
    q.den_ = d;
    return q;
  }
  static Q from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Q: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 r = a % b;
      a = b;
      b = r;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("Q: 64-bit overflow");
    return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("Q: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Q min(const Q& a, const Q& b) { return b < a ? b : a; }
inline Q max(const Q& a, const Q& b) { return a < b ? b : a; }

/// Additive valuation: a rational or +infinity. |x| = eps^val(x) for a fixed
/// eps in (0,1), so larger valuation means smaller absolute value.
class Valuation {
 public:
  Valuation() = default;  // +infinity
  Valuation(Q v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Valuation(std::int64_t v) : v_(Q(v)) {}  // NOLINT(google-explicit-constructor)
  static Valuation infinity() { return {}; }

  [[nodiscard]] bool is_infinite() const { return !v_.has_value(); }
  [[nodiscard]] bool is_finite() const { return v_.has_value(); }
  [[nodiscard]] const Q& value() const {
    if (!v_) throw std::logic_error("Valuation: value() of +infinity");
    return *v_;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return {};
    return {*a.v_ + *b.v_};
  }
  friend bool operator==(const Valuation& a, const Valuation& b) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    return *a.v_ <=> *b.v_;
  }

  [[nodiscard]] std::string str() const { return v_ ? v_->str() : std::string("inf"); }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

 private:
  std::optional<Q> v_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

}  // namespace nadyn
