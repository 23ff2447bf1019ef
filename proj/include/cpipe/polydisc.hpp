#ifndef CPIPE_POLYDISC_HPP
#define CPIPE_POLYDISC_HPP

// Bivariate polynomials in the cross-section coordinates (z2, z3) of the unit
// disc, with exact calculus: derivatives, disc moments, boundary restriction
// and polar form. Coefficients are either `double` or `Rational`.

#include "cpipe/rational.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

namespace cpipe {

enum class Var { z2, z3 };

template <class T>
class DiscPoly {
 public:
  using Monomial = std::pair<int, int>;  // (power of z2, power of z3)
  using TermMap = std::map<Monomial, T>;

  DiscPoly() = default;

  static DiscPoly constant(const T& c) { return monomial(0, 0, c); }
  static DiscPoly monomial(int m, int n, const T& c = T(1)) {
    DiscPoly p;
    p.add_term(m, n, c);
    return p;
  }
  static DiscPoly z2() { return monomial(1, 0); }
  static DiscPoly z3() { return monomial(0, 1); }
  /// z2^2 + z3^2
  static DiscPoly rho2() { return monomial(2, 0) + monomial(0, 2); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coeff(int m, int n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? T(0) : it->second;
  }

  /// -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [mn, c] : terms_) d = std::max(d, mn.first + mn.second);
    return d;
  }

  void add_term(int m, int n, const T& c) {
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace({m, n}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  DiscPoly& operator+=(const DiscPoly& o) {
    for (const auto& [mn, c] : o.terms_) add_term(mn.first, mn.second, c);
    return *this;
  }
  DiscPoly& operator-=(const DiscPoly& o) {
    for (const auto& [mn, c] : o.terms_) add_term(mn.first, mn.second, -c);
    return *this;
  }
  DiscPoly& operator*=(const T& s) {
    if (s == T(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (it->second == T(0)) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return *this;
  }
  DiscPoly& operator*=(const DiscPoly& o) { return *this = *this * o; }

  friend DiscPoly operator+(DiscPoly a, const DiscPoly& b) { return a += b; }
  friend DiscPoly operator-(DiscPoly a, const DiscPoly& b) { return a -= b; }
  friend DiscPoly operator-(DiscPoly a) { return a *= T(-1); }
  friend DiscPoly operator*(DiscPoly a, const T& s) { return a *= s; }
  friend DiscPoly operator*(const T& s, DiscPoly a) { return a *= s; }
  friend DiscPoly operator*(const DiscPoly& a, const DiscPoly& b) {
    DiscPoly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        r.add_term(ma.first + mb.first, ma.second + mb.second, ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const DiscPoly& a, const DiscPoly& b) { return a.terms_ == b.terms_; }

  T evaluate(const T& z2v, const T& z3v) const {
    T sum(0);
    for (const auto& [mn, c] : terms_) sum += c * ipow(z2v, mn.first) * ipow(z3v, mn.second);
    return sum;
  }

  double evaluate_double(double z2v, double z3v) const {
    double sum = 0.0;
    for (const auto& [mn, c] : terms_) {
      sum += to_double(c) * ipow(z2v, mn.first) * ipow(z3v, mn.second);
    }
    return sum;
  }

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mn, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  template <class U>
  static U ipow(U base, int e) {
    U r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  }

 private:
  TermMap terms_;
};

/// Pair of polynomials (v2, v3) for cross-sectional vector fields.
template <class T>
struct VecPoly {
  DiscPoly<T> x;
  DiscPoly<T> y;

  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  friend VecPoly operator+(const VecPoly& a, const VecPoly& b) { return {a.x + b.x, a.y + b.y}; }
  friend VecPoly operator-(const VecPoly& a, const VecPoly& b) { return {a.x - b.x, a.y - b.y}; }
  friend VecPoly operator*(const T& s, const VecPoly& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const VecPoly& a, const VecPoly& b) { return a.x == b.x && a.y == b.y; }
};

template <class T>
DiscPoly<T> differentiate(const DiscPoly<T>& p, Var v) {
  DiscPoly<T> r;
  for (const auto& [mn, c] : p.terms()) {
    const auto [m, n] = mn;
    if (v == Var::z2 && m > 0) r.add_term(m - 1, n, c * T(m));
    if (v == Var::z3 && n > 0) r.add_term(m, n - 1, c * T(n));
  }
  return r;
}

template <class T>
DiscPoly<T> laplacian(const DiscPoly<T>& p) {
  return differentiate(differentiate(p, Var::z2), Var::z2) +
         differentiate(differentiate(p, Var::z3), Var::z3);
}

template <class T>
VecPoly<T> gradient(const DiscPoly<T>& p) {
  return {differentiate(p, Var::z2), differentiate(p, Var::z3)};
}

template <class T>
VecPoly<T> laplacian(const VecPoly<T>& v) {
  return {laplacian(v.x), laplacian(v.y)};
}

template <class T>
DiscPoly<T> divergence(const VecPoly<T>& v) {
  return differentiate(v.x, Var::z2) + differentiate(v.y, Var::z3);
}

/// (d psi/d z3, -d psi/d z2)
template <class T>
VecPoly<T> rotated_gradient(const DiscPoly<T>& psi) {
  return {differentiate(psi, Var::z3), -differentiate(psi, Var::z2)};
}

/// Radial derivative z . grad p; equals the outward normal derivative on the unit circle.
template <class T>
DiscPoly<T> radial_derivative(const DiscPoly<T>& p) {
  return DiscPoly<T>::z2() * differentiate(p, Var::z2) + DiscPoly<T>::z3() * differentiate(p, Var::z3);
}

/// Angular derivative d/ds2 = -z3 d/dz2 + z2 d/dz3.
template <class T>
DiscPoly<T> angular_derivative(const DiscPoly<T>& p) {
  return DiscPoly<T>::z2() * differentiate(p, Var::z3) - DiscPoly<T>::z3() * differentiate(p, Var::z2);
}

/// Integral of z2^m z3^n over the unit disc divided by pi:
/// (m-1)!! (n-1)!! / (2^((m+n)/2) ((m+n)/2 + 1)!) for m, n even, else 0.
template <class T>
T disc_moment_over_pi(int m, int n) {
  if (m % 2 != 0 || n % 2 != 0) return T(0);
  const int a = m / 2;
  const int b = n / 2;
  T num(1);
  for (int k = 2 * a - 1; k > 1; k -= 2) num *= T(k);
  for (int k = 2 * b - 1; k > 1; k -= 2) num *= T(k);
  T den(1);
  for (int k = 0; k < a + b; ++k) den *= T(2);
  for (int k = 2; k <= a + b + 1; ++k) den *= T(k);
  return num / den;
}

/// Exact disc integral expressed as a multiple of pi.
template <class T>
T disc_integral_over_pi(const DiscPoly<T>& p) {
  T sum(0);
  for (const auto& [mn, c] : p.terms()) sum += c * disc_moment_over_pi<T>(mn.first, mn.second);
  return sum;
}

template <class T>
double disc_integral(const DiscPoly<T>& p) {
  return std::numbers::pi * to_double(disc_integral_over_pi(p));
}

template <class T>
DiscPoly<double> to_double_poly(const DiscPoly<T>& p) {
  DiscPoly<double> r;
  for (const auto& [mn, c] : p.terms()) r.add_term(mn.first, mn.second, to_double(c));
  return r;
}

inline DiscPoly<Rational> to_rational_poly(const DiscPoly<double>& p) {
  DiscPoly<Rational> r;
  for (const auto& [mn, c] : p.terms()) r.add_term(mn.first, mn.second, to_rational(c));
  return r;
}

/// Plain-text monomial sum, highest degree first, e.g. "2*z2^2*z3 - 1".
template <class T>
std::string to_string(const DiscPoly<T>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto [m, n] = it->first;
    std::ostringstream cs;
    cs.precision(17);
    cs << it->second;
    std::string c = cs.str();
    const bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string body;
    if (m > 0) body += m > 1 ? "z2^" + std::to_string(m) : "z2";
    if (n > 0) body += (body.empty() ? "" : "*") + (n > 1 ? "z3^" + std::to_string(n) : std::string("z3"));
    if (body.empty()) {
      os << c;
    } else if (c == "1") {
      os << body;
    } else {
      os << c << "*" << body;
    }
  }
  return os.str();
}

}  // namespace cpipe

#endif
