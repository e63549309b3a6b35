#pragma once

#include <limits>
#include <string>

#include "plap/errors.hpp"

namespace plap {

// Integrability exponent on the closed interval [1, inf].  The endpoints are
// symbolic: they compare and print exactly, and never round-trip through a
// sentinel double.  Finite values are restricted to (1, inf).
class Exponent {
 public:
  static Exponent one() { return Exponent(Kind::One, 1.0); }
  static Exponent infinity() { return Exponent(Kind::Inf, 0.0); }
  static Exponent finite(double p);

  // Accepts "1", "inf", "infinity", or a decimal literal > 1.
  static Exponent parse(const std::string& text);

  bool is_one() const { return kind_ == Kind::One; }
  bool is_infinity() const { return kind_ == Kind::Inf; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  // Finite value in (1, inf); throws on the endpoints.
  double value() const;

  // 1, p, or +inf.  Useful for limits that extend continuously.
  double as_double() const;

  // Hoelder conjugate: 1' = inf, inf' = 1, p' = p/(p-1).
  Exponent conjugate() const;

  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.rank() == b.rank();
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    return a.rank() < b.rank();
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return !(a < b); }

 private:
  enum class Kind { One, Finite, Inf };
  Exponent(Kind k, double v) : kind_(k), value_(v) {}

  // Total order 1 < p < inf realized as a double key; finite values are
  // strictly inside the endpoint ranks.
  double rank() const {
    if (kind_ == Kind::One) return 1.0;
    if (kind_ == Kind::Inf) return std::numeric_limits<double>::infinity();
    return value_;
  }

  Kind kind_;
  double value_;
};

}  // namespace plap
