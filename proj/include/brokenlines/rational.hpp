#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bl {

using Rational = mpq_class;

/// Canonical text form "p/q": lowest terms, q > 0, always with a slash.
std::string format_rational(const Rational& q);

/// Accepts "p/q", "p", or a decimal integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Raised for undefined operations such as inf + (-inf) or the translation
/// distance from a fixed point.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A value in [-inf, inf]. Finite values are exact rationals.
///
/// Points of Rep(I, BR+) only ever use (-inf, inf]; the two-sided form is
/// needed for coordinates on broken lines and for translation distances.
class ExtReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtReal() : kind_(Kind::Finite), value_(0) {}
  ExtReal(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtReal(long v) : kind_(Kind::Finite), value_(v) {}             // NOLINT
  ExtReal(int v) : kind_(Kind::Finite), value_(v) {}              // NOLINT

  static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
  static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Throws DomainError when infinite.
  const Rational& value() const;

  ExtReal operator-() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

  /// "p/q", "+inf" or "-inf".
  std::string to_string() const;
  static ExtReal parse(std::string_view text);

 private:
  explicit ExtReal(Kind k) : kind_(k), value_(0) {}

  Kind kind_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtReal& x);

}  // namespace bl
