#ifndef CPIPE_POLAR_HPP
#define CPIPE_POLAR_HPP

// Trigonometric views of DiscPoly values: the boundary trace as a finite
// Fourier series in s2, and the polar form sum c * s3^j * {cos,sin}(k s2).

#include "cpipe/errors.hpp"
#include "cpipe/polydisc.hpp"

#include <map>
#include <tuple>

namespace cpipe {

/// a_0 + sum_k (a_k cos k s2 + b_k sin k s2); entry k holds (a_k, b_k).
template <class T>
class FourierSeries {
 public:
  using Modes = std::map<int, std::pair<T, T>>;

  static FourierSeries one() {
    FourierSeries f;
    f.add(0, T(1), T(0));
    return f;
  }

  const Modes& modes() const { return modes_; }
  bool is_zero() const { return modes_.empty(); }

  T cos_coeff(int k) const {
    auto it = modes_.find(k);
    return it == modes_.end() ? T(0) : it->second.first;
  }
  T sin_coeff(int k) const {
    auto it = modes_.find(k);
    return it == modes_.end() ? T(0) : it->second.second;
  }
  /// Mean over s2.
  T mean() const { return cos_coeff(0); }

  void add(int k, const T& a, const T& b) {
    // cos(-k) = cos k, sin(-k) = -sin k
    if (k < 0) {
      add(-k, a, -b);
      return;
    }
    auto& slot = modes_[k];
    slot.first += a;
    if (k != 0) slot.second += b;
    if (slot.first == T(0) && slot.second == T(0)) modes_.erase(k);
  }

  FourierSeries times_cos() const {
    FourierSeries r;
    for (const auto& [k, ab] : modes_) {
      const T half_a = ab.first / T(2);
      const T half_b = ab.second / T(2);
      r.add(k + 1, half_a, half_b);
      r.add(k - 1, half_a, half_b);
    }
    return r;
  }

  FourierSeries times_sin() const {
    FourierSeries r;
    for (const auto& [k, ab] : modes_) {
      const T half_a = ab.first / T(2);
      const T half_b = ab.second / T(2);
      // cos k sin = (sin(k+1) - sin(k-1))/2 ; sin k sin = (cos(k-1) - cos(k+1))/2
      r.add(k + 1, -half_b, half_a);
      r.add(k - 1, half_b, -half_a);
    }
    return r;
  }

  FourierSeries& operator+=(const FourierSeries& o) {
    for (const auto& [k, ab] : o.modes_) add(k, ab.first, ab.second);
    return *this;
  }
  FourierSeries& operator*=(const T& s) {
    FourierSeries r;
    for (const auto& [k, ab] : modes_) r.add(k, ab.first * s, ab.second * s);
    return *this = r;
  }

  double evaluate(double s2) const {
    double v = 0.0;
    for (const auto& [k, ab] : modes_) {
      v += to_double(ab.first) * std::cos(k * s2) + to_double(ab.second) * std::sin(k * s2);
    }
    return v;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, ab] : modes_) {
      m = std::max({m, std::abs(to_double(ab.first)), std::abs(to_double(ab.second))});
    }
    return m;
  }

 private:
  Modes modes_;
};

/// Fourier series of cos^m(s2) sin^n(s2).
template <class T>
FourierSeries<T> trig_monomial(int m, int n) {
  auto f = FourierSeries<T>::one();
  for (int i = 0; i < m; ++i) f = f.times_cos();
  for (int i = 0; i < n; ++i) f = f.times_sin();
  return f;
}

/// Trace on the unit circle, z2 = cos s2, z3 = sin s2.
template <class T>
FourierSeries<T> restrict_to_boundary(const DiscPoly<T>& p) {
  FourierSeries<T> r;
  for (const auto& [mn, c] : p.terms()) {
    auto f = trig_monomial<T>(mn.first, mn.second);
    f *= c;
    r += f;
  }
  return r;
}

enum class Trig { cos, sin };

/// sum c * s3^j * trig(k s2), keyed by (j, k, trig). For k = 0 only Trig::cos is used.
template <class T>
class PolarPoly {
 public:
  using Key = std::tuple<int, int, Trig>;
  using TermMap = std::map<Key, T>;

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int j, int k, Trig t, const T& c) {
    if (c == T(0)) return;
    if (k == 0 && t == Trig::sin) return;
    auto& slot = terms_[{j, k, t}];
    slot += c;
    if (slot == T(0)) terms_.erase(Key{j, k, t});
  }

  T coeff(int j, int k, Trig t) const {
    auto it = terms_.find({j, k, t});
    return it == terms_.end() ? T(0) : it->second;
  }

  /// True when no term carries an angular harmonic k != 0.
  bool is_axisymmetric() const {
    for (const auto& [key, c] : terms_) {
      if (std::get<1>(key) != 0) return false;
    }
    return true;
  }

  /// Radial profile multiplying trig(k s2), as coefficients of s3^j.
  std::map<int, T> mode(int k, Trig t) const {
    std::map<int, T> r;
    for (const auto& [key, c] : terms_) {
      if (std::get<1>(key) == k && std::get<2>(key) == t) r[std::get<0>(key)] = c;
    }
    return r;
  }

  double evaluate(double s3, double s2) const {
    double v = 0.0;
    for (const auto& [key, c] : terms_) {
      const auto [j, k, t] = key;
      const double ang = t == Trig::cos ? std::cos(k * s2) : std::sin(k * s2);
      v += to_double(c) * std::pow(s3, j) * ang;
    }
    return v;
  }

  friend bool operator==(const PolarPoly& a, const PolarPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

template <class T>
PolarPoly<T> to_polar(const DiscPoly<T>& p) {
  PolarPoly<T> r;
  for (const auto& [mn, c] : p.terms()) {
    const int j = mn.first + mn.second;
    const auto f = trig_monomial<T>(mn.first, mn.second);
    for (const auto& [k, ab] : f.modes()) {
      r.add_term(j, k, Trig::cos, c * ab.first);
      if (k != 0) r.add_term(j, k, Trig::sin, c * ab.second);
    }
  }
  return r;
}

/// Re/Im of (z2 + i z3)^k, i.e. s3^k cos(k s2) and s3^k sin(k s2).
template <class T>
DiscPoly<T> harmonic(int k, Trig t) {
  DiscPoly<T> r;
  T binom(1);
  for (int l = 0; l <= k; ++l) {
    if (l > 0) binom = binom * T(k - l + 1) / T(l);
    const bool even = l % 2 == 0;
    if ((t == Trig::cos) == even) {
      const int quarter = even ? l / 2 : (l - 1) / 2;
      r.add_term(k - l, l, quarter % 2 == 0 ? binom : -binom);
    }
  }
  return r;
}

/// Inverse of to_polar. Throws when a term s3^j trig(k s2) has j - k odd or
/// negative, since such a term is not a polynomial in (z2, z3).
template <class T>
DiscPoly<T> to_cartesian(const PolarPoly<T>& p) {
  DiscPoly<T> r;
  for (const auto& [key, c] : p.terms()) {
    const auto [j, k, t] = key;
    if (j < k || (j - k) % 2 != 0) {
      throw Error("polydisc", "polar term s3^" + std::to_string(j) + " with harmonic " +
                                  std::to_string(k) + " is not polynomial in (z2, z3)");
    }
    DiscPoly<T> radial = DiscPoly<T>::constant(c);
    for (int i = 0; i < (j - k) / 2; ++i) radial *= DiscPoly<T>::rho2();
    r += radial * harmonic<T>(k, t);
  }
  return r;
}

}  // namespace cpipe

#endif
