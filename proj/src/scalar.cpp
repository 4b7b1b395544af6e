#include "k3/scalar.hpp"

#include <ostream>

namespace k3 {

std::ostream& operator<<(std::ostream& os, Int a) { return os << a.get(); }

Int narrow(const Integer& x) {
  if (x > INT64_MAX || x < INT64_MIN) Int::overflow();
  return Int(x.convert_to<std::int64_t>());
}

Int narrow_rational(const Rational& x) {
  if (boost::multiprecision::denominator(x) != 1) throw std::domain_error("expected an integer, got " + to_string(x));
  return narrow(boost::multiprecision::numerator(x));
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

}  // namespace k3
