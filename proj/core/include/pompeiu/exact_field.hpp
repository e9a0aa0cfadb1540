#ifndef POMPEIU_EXACT_FIELD_HPP
#define POMPEIU_EXACT_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pompeiu {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised on division by zero, incompatible radicands or a bad radicand.
class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a literal such as "3/2 - 1/1*sqrt(2)" cannot be parsed.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_square_free(std::int64_t n);

/// An element p + q*sqrt(d) of the real quadratic field Q(sqrt d).
///
/// Values are kept normalized: d is square-free, and q == 0 forces d == 1, so
/// a rational value is compatible with every field. Two irrational values with
/// different radicands cannot be combined.
class QField {
 public:
  QField() = default;
  QField(Rational p);  // NOLINT(google-explicit-constructor)
  QField(long long p);  // NOLINT(google-explicit-constructor)
  QField(Rational p, Rational q, std::int64_t d);

  static QField sqrt(std::int64_t d);
  /// Accepts `P/Q`, `P/Q + R/S*sqrt(D)` and shorthands such as `2`, `-sqrt(2)`.
  static QField parse(std::string_view text);

  const Rational& rational_part() const { return p_; }
  const Rational& radical_coefficient() const { return q_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QField conjugate() const;
  /// Field norm p^2 - q^2 d; zero only for zero.
  Rational norm() const;

  /// Correctly rounded to within one ulp.
  double to_double() const;
  /// Canonical literal `P/Q` or `P/Q +/- R/S*sqrt(D)`.
  std::string to_string() const;

  QField operator-() const;
  QField& operator+=(const QField& y);
  QField& operator-=(const QField& y);
  QField& operator*=(const QField& y);
  QField& operator/=(const QField& y);

  friend QField operator+(QField x, const QField& y) { return x += y; }
  friend QField operator-(QField x, const QField& y) { return x -= y; }
  friend QField operator*(QField x, const QField& y) { return x *= y; }
  friend QField operator/(QField x, const QField& y) { return x /= y; }

  friend bool operator==(const QField& x, const QField& y) {
    return x.p_ == y.p_ && x.q_ == y.q_ && x.d_ == y.d_;
  }

 private:
  void normalize();
  std::int64_t joint_radicand(const QField& y) const;

  Rational p_{0};
  Rational q_{0};
  std::int64_t d_{1};
};

/// Exact sign of x: -1, 0 or +1.
int sign(const QField& x);
/// Exact comparison; throws FieldError for incompatible radicands.
int compare(const QField& x, const QField& y);

inline bool operator<(const QField& x, const QField& y) { return compare(x, y) < 0; }
inline bool operator>(const QField& x, const QField& y) { return compare(x, y) > 0; }
inline bool operator<=(const QField& x, const QField& y) { return compare(x, y) <= 0; }
inline bool operator>=(const QField& x, const QField& y) { return compare(x, y) >= 0; }

std::ostream& operator<<(std::ostream& os, const QField& x);

/// Outcome of an exact rationality test of a ratio x/y.
struct RationalityWitness {
  bool is_rational = false;
  bool negative = false;
  BigInt n{0};  ///< numerator magnitude, coprime with m
  BigInt m{1};
};

RationalityWitness is_rational_ratio(const QField& x, const QField& y);

/// The radicand shared by all values (1 if all rational). Throws on a mix.
std::int64_t common_radicand(std::span<const QField> values);

}  // namespace pompeiu

#endif  // POMPEIU_EXACT_FIELD_HPP
