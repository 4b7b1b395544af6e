#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace k3 {

// 64-bit integer that throws instead of wrapping. Lattice coordinates,
// Gram entries and isometry entries in this project are small, so this is
// the working scalar; anything that can blow up (SNF, HNF, LLL, LP) runs on
// Integer / Rational below and converts back through narrow().
class Int {
 public:
  constexpr Int() = default;
  template <std::integral T>
  constexpr Int(T x) : v_(static_cast<std::int64_t>(x)) {}

  constexpr std::int64_t get() const { return v_; }
  explicit operator std::int64_t() const { return v_; }
  explicit operator double() const { return double(v_); }

  friend Int operator+(Int a, Int b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) overflow();
    return Int(r);
  }
  friend Int operator-(Int a, Int b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) overflow();
    return Int(r);
  }
  friend Int operator*(Int a, Int b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) overflow();
    return Int(r);
  }
  // truncating division, as for int64_t
  friend Int operator/(Int a, Int b) {
    if (b.v_ == 0) throw std::domain_error("k3::Int: division by zero");
    if (a.v_ == INT64_MIN && b.v_ == -1) overflow();
    return Int(a.v_ / b.v_);
  }
  friend Int operator%(Int a, Int b) {
    if (b.v_ == 0) throw std::domain_error("k3::Int: division by zero");
    if (b.v_ == -1) return Int(0);
    return Int(a.v_ % b.v_);
  }
  Int operator-() const { return Int(0) - *this; }
  Int operator+() const { return *this; }
  Int& operator+=(Int b) { return *this = *this + b; }
  Int& operator-=(Int b) { return *this = *this - b; }
  Int& operator*=(Int b) { return *this = *this * b; }
  Int& operator/=(Int b) { return *this = *this / b; }

  friend bool operator==(Int a, Int b) { return a.v_ == b.v_; }
  friend bool operator!=(Int a, Int b) { return a.v_ != b.v_; }
  friend bool operator<(Int a, Int b) { return a.v_ < b.v_; }
  friend bool operator>(Int a, Int b) { return a.v_ > b.v_; }
  friend bool operator<=(Int a, Int b) { return a.v_ <= b.v_; }
  friend bool operator>=(Int a, Int b) { return a.v_ >= b.v_; }

  [[noreturn]] static void overflow() { throw std::overflow_error("k3::Int: 64-bit overflow"); }

 private:
  std::int64_t v_ = 0;
};

}  // namespace k3

namespace Eigen {
template <>
struct NumTraits<k3::Int> : GenericNumTraits<k3::Int> {
  typedef k3::Int Real;
  typedef k3::Int NonInteger;
  typedef k3::Int Nested;
  typedef k3::Int Literal;
  enum { IsComplex = 0, IsInteger = 1, IsSigned = 1, RequireInitialization = 0, ReadCost = 1, AddCost = 2, MulCost = 3 };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline Real highest() { return Real(INT64_MAX); }
  static inline Real lowest() { return Real(INT64_MIN); }
  static inline int digits10() { return 18; }
};
}  // namespace Eigen

namespace k3 {

inline Int abs(Int a) { return a < 0 ? -a : a; }
std::ostream& operator<<(std::ostream& os, Int a);

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Mat<Int>;
using IntVector = Vec<Int>;
using BigMatrix = Mat<Integer>;
using BigVector = Vec<Integer>;
using RatMatrix = Mat<Rational>;
using RatVector = Vec<Rational>;

Int narrow(const Integer& x);
Int narrow_rational(const Rational& x);  // throws unless integral
inline Integer widen(Int x) { return Integer(x.get()); }

template <typename To>
struct ScalarCast;
template <>
struct ScalarCast<Int> {
  static Int from(Int x) { return x; }
  static Int from(const Integer& x) { return narrow(x); }
  static Int from(const Rational& x) { return narrow_rational(x); }
};
template <>
struct ScalarCast<Integer> {
  static Integer from(Int x) { return Integer(x.get()); }
  static Integer from(const Integer& x) { return x; }
  static Integer from(const Rational& x) {
    if (boost::multiprecision::denominator(x) != 1) throw std::domain_error("non-integral rational");
    return boost::multiprecision::numerator(x);
  }
};
template <>
struct ScalarCast<Rational> {
  static Rational from(Int x) { return Rational(x.get()); }
  static Rational from(const Integer& x) { return Rational(x); }
  static Rational from(const Rational& x) { return x; }
};
template <>
struct ScalarCast<double> {
  static double from(Int x) { return double(x.get()); }
  static double from(const Integer& x) { return x.convert_to<double>(); }
  static double from(const Rational& x) { return x.convert_to<double>(); }
};

template <typename To, typename Derived>
Mat<To> convert(const Eigen::MatrixBase<Derived>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarCast<To>::from(m(i, j));
  return out;
}
template <typename To, typename Derived>
Vec<To> convert_vec(const Eigen::MatrixBase<Derived>& v) {
  Vec<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = ScalarCast<To>::from(v[i]);
  return out;
}

std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

// hash for integer row vectors (used in all vector sets)
struct VecHash {
  std::size_t operator()(const IntVector& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ std::size_t(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      h = (h ^ std::size_t(v[i].get())) * 0x100000001b3ull + (h >> 29);
    return h;
  }
};
struct VecEq {
  bool operator()(const IntVector& a, const IntVector& b) const noexcept {
    return a.size() == b.size() && (a.size() == 0 || a == b);
  }
};
struct VecLess {
  bool operator()(const IntVector& a, const IntVector& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

}  // namespace k3
