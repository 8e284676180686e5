#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tdsp {

// Exact arbitrary-precision rational, always in lowest terms with a
// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}
  Rational(long value) : value_(value) {}
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  // Accepts "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  std::string to_string() const;
  double to_double() const { return value_.get_d(); }
  int sign() const { return sgn(value_); }
  bool is_integer() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace tdsp
