#include "pompeiu/exact_field.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pompeiu {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;

constexpr std::int64_t kMaxRadicand = 1'000'000'000'000LL;

Wide to_wide(const Rational& r) {
  return Wide(boost::multiprecision::numerator(r)) /
         Wide(boost::multiprecision::denominator(r));
}

// Splits n = k^2 * r with r square-free.
std::pair<std::int64_t, std::int64_t> split_square(std::int64_t n) {
  std::int64_t k = 1;
  std::int64_t r = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2 == 1) r *= p;
  }
  return {k, r * n};
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  QField run() {
    skip_space();
    if (at_end()) fail("empty literal");
    bool first = true;
    while (!at_end()) {
      int s = 1;
      if (peek() == '+' || peek() == '-') {
        s = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      term(s);
      first = false;
      skip_space();
    }
    return QField(rational_, radical_, radicand_);
  }

 private:
  void term(int s) {
    Rational coefficient{1};
    if (!starts_with("sqrt")) {
      BigInt num = integer();
      BigInt den{1};
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_space();
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      coefficient = Rational(num, den);
      skip_space();
      if (at_end() || peek() != '*') {
        rational_ += s * coefficient;
        return;
      }
      ++pos_;
      skip_space();
      if (!starts_with("sqrt")) fail("expected sqrt(D) after '*'");
    }
    pos_ += 4;
    skip_space();
    expect('(');
    skip_space();
    BigInt big = integer();
    skip_space();
    expect(')');
    if (big < 1 || big > kMaxRadicand) fail("radicand out of range");
    auto [k, r] = split_square(big.convert_to<std::int64_t>());
    coefficient *= k;
    if (r == 1) {
      rational_ += s * coefficient;
      return;
    }
    if (radicand_ != 1 && radicand_ != r) fail("more than one radicand");
    radicand_ = r;
    radical_ += s * coefficient;
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad exact literal '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Rational rational_{0};
  Rational radical_{0};
  std::int64_t radicand_ = 1;
};

}  // namespace

bool is_square_free(std::int64_t n) {
  if (n < 1) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

QField::QField(Rational p) : p_(std::move(p)) {}

QField::QField(long long p) : p_(p) {}

QField::QField(Rational p, Rational q, std::int64_t d)
    : p_(std::move(p)), q_(std::move(q)), d_(d) {
  if (d < 1 || d > kMaxRadicand || !is_square_free(d)) {
    throw FieldError("radicand must be a square-free integer >= 1, got " +
                     std::to_string(d));
  }
  normalize();
}

QField QField::sqrt(std::int64_t d) { return QField(0, 1, d); }

QField QField::parse(std::string_view text) { return LiteralParser(text).run(); }

void QField::normalize() {
  if (d_ == 1) {
    p_ += q_;
    q_ = 0;
  }
  if (q_ == 0) d_ = 1;
}

std::int64_t QField::joint_radicand(const QField& y) const {
  if (d_ == 1) return y.d_;
  if (y.d_ == 1 || y.d_ == d_) return d_;
  throw FieldError("incompatible radicands sqrt(" + std::to_string(d_) + ") and sqrt(" +
                   std::to_string(y.d_) + ")");
}

QField QField::conjugate() const {
  QField r = *this;
  r.q_ = -r.q_;
  return r;
}

Rational QField::norm() const { return p_ * p_ - q_ * q_ * d_; }

double QField::to_double() const {
  Wide v = to_wide(p_);
  if (q_ != 0) v += to_wide(q_) * boost::multiprecision::sqrt(Wide(d_));
  return v.convert_to<double>();
}

std::string QField::to_string() const {
  std::ostringstream os;
  os << boost::multiprecision::numerator(p_) << '/' << boost::multiprecision::denominator(p_);
  if (q_ != 0) {
    Rational a = q_ < 0 ? Rational(-q_) : q_;
    os << (q_ < 0 ? " - " : " + ") << boost::multiprecision::numerator(a) << '/'
       << boost::multiprecision::denominator(a) << "*sqrt(" << d_ << ')';
  }
  return os.str();
}

QField QField::operator-() const {
  QField r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

QField& QField::operator+=(const QField& y) {
  d_ = joint_radicand(y);
  p_ += y.p_;
  q_ += y.q_;
  normalize();
  return *this;
}

QField& QField::operator-=(const QField& y) {
  d_ = joint_radicand(y);
  p_ -= y.p_;
  q_ -= y.q_;
  normalize();
  return *this;
}

QField& QField::operator*=(const QField& y) {
  std::int64_t d = joint_radicand(y);
  Rational p = p_ * y.p_ + q_ * y.q_ * d;
  Rational q = p_ * y.q_ + q_ * y.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  d_ = d;
  normalize();
  return *this;
}

QField& QField::operator/=(const QField& y) {
  if (y.is_zero()) throw FieldError("division by zero");
  joint_radicand(y);
  Rational n = y.norm();
  *this *= y.conjugate();
  p_ /= n;
  q_ /= n;
  normalize();
  return *this;
}

int sign(const QField& x) {
  const Rational& p = x.rational_part();
  const Rational& q = x.radical_coefficient();
  int sp = p.sign();
  int sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger of |p| and |q| sqrt(d) wins.
  Rational diff = p * p - q * q * x.radicand();
  return diff.sign() * sp;
}

int compare(const QField& x, const QField& y) { return sign(x - y); }

std::ostream& operator<<(std::ostream& os, const QField& x) { return os << x.to_string(); }

RationalityWitness is_rational_ratio(const QField& x, const QField& y) {
  if (y.is_zero()) throw FieldError("ratio with zero denominator");
  QField r = x / y;
  RationalityWitness w;
  if (!r.is_rational()) return w;
  w.is_rational = true;
  const Rational& v = r.rational_part();
  w.negative = v < 0;
  w.n = boost::multiprecision::abs(boost::multiprecision::numerator(v));
  w.m = boost::multiprecision::denominator(v);
  return w;
}

std::int64_t common_radicand(std::span<const QField> values) {
  std::int64_t d = 1;
  for (const QField& v : values) {
    if (v.radicand() == 1) continue;
    if (d != 1 && d != v.radicand()) {
      throw FieldError("values live in different quadratic fields");
    }
    d = v.radicand();
  }
  return d;
}

}  // namespace pompeiu
