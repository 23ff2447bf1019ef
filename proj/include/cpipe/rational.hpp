#ifndef CPIPE_RATIONAL_HPP
#define CPIPE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <type_traits>

namespace cpipe {

/// Exact rational scalar used by the verification layer.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational to_rational(double x) { return Rational(x); }
inline Rational to_rational(const Rational& x) { return x; }

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

/// Continued-fraction approximant of x with denominator at most max_den.
inline Rational rationalize(double x, long long max_den = 1 << 20) {
  const bool neg = x < 0.0;
  Rational r = to_rational(neg ? -x : x);
  using boost::multiprecision::cpp_int;
  cpp_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (true) {
    const cpp_int a = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    const cpp_int q2 = a * q1 + q0;
    if (q2 > max_den) break;
    const cpp_int p2 = a * p1 + p0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const Rational frac = r - Rational(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  Rational out(p1, q1);
  return neg ? Rational(-out) : out;
}

template <class T>
T scalar_ratio(long long num, long long den) {
  if constexpr (std::is_same_v<T, Rational>) {
    return make_rational(num, den);
  } else {
    return static_cast<T>(num) / static_cast<T>(den);
  }
}

/// Rational converted to the coefficient domain T (exact for Rational).
template <class T>
T from_rational(const Rational& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    return static_cast<T>(x.convert_to<double>());
  }
}

inline std::string to_string(const Rational& x) {
  return x.str();
}

}  // namespace cpipe

#endif
