#include "plap/exponent.hpp"

#include <cmath>
#include <cstdio>

namespace plap {

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p) || !(p > 1.0))
    throw config_error("exponent: finite value must lie in (1, inf), got " +
                       std::to_string(p));
  return Exponent(Kind::Finite, p);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  if (text == "1" || text == "1.0") return one();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw config_error("exponent: cannot parse '" + text + "'");
  }
  if (pos != text.size())
    throw config_error("exponent: trailing characters in '" + text + "'");
  if (v == 1.0) return one();
  return finite(v);
}

double Exponent::value() const {
  if (kind_ != Kind::Finite)
    throw config_error("exponent: endpoint has no finite value");
  return value_;
}

double Exponent::as_double() const { return rank(); }

Exponent Exponent::conjugate() const {
  if (kind_ == Kind::One) return infinity();
  if (kind_ == Kind::Inf) return one();
  return finite(value_ / (value_ - 1.0));
}

std::string Exponent::str() const {
  if (kind_ == Kind::One) return "1";
  if (kind_ == Kind::Inf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

}  // namespace plap
