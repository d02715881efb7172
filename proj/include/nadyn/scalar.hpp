#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

namespace nadyn {

/// Prime ground field: the rationals (p == 0) or F_p.
struct GroundField {
  std::uint32_t p = 0;

  static GroundField rationals() { return {}; }
  /// Throws std::invalid_argument unless p is prime.
  static GroundField prime(std::uint32_t p);

  [[nodiscard]] std::uint32_t characteristic() const { return p; }
  [[nodiscard]] bool is_rationals() const { return p == 0; }
  [[nodiscard]] std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

  friend bool operator==(const GroundField&, const GroundField&) = default;
};

bool is_prime(std::uint64_t n);

/// Element of a prime ground field.
///
/// Values built without a field (default or from an integer) are rationals and
/// coerce into F_p when combined with an F_p element. Combining two different
/// positive characteristics is a logic error.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : v_(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)
  Scalar(GroundField f, long n);
  Scalar(GroundField f, const mpq_class& q);
  static Scalar rational(long num, long den);

  [[nodiscard]] GroundField field() const { return {p_}; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  /// Only meaningful over the rationals; used for sign-aware printing.
  [[nodiscard]] bool is_negative() const;

  [[nodiscard]] Scalar in_field(GroundField f) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Throws DivisionByZero.
  [[nodiscard]] Scalar inverse() const;
  [[nodiscard]] Scalar times_int(long k) const;
  [[nodiscard]] Scalar pow(long e) const;
  /// An element r with r^n == *this, if one exists in the ground field.
  [[nodiscard]] std::optional<Scalar> nth_root(unsigned n) const;
  /// Storage size in bits (numerator plus denominator over the rationals).
  [[nodiscard]] std::size_t bit_size() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  [[nodiscard]] std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static std::uint32_t common_char(const Scalar& a, const Scalar& b);
  [[nodiscard]] std::int64_t residue_in(std::uint32_t p) const;

  std::uint32_t p_ = 0;
  std::variant<mpq_class, std::int64_t> v_{mpq_class(0)};
};

}  // namespace nadyn
