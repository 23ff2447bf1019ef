#ifndef CPIPE_EXPANSION_HPP
#define CPIPE_EXPANSION_HPP

#include "cpipe/appendix.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/polydisc.hpp"
#include "cpipe/station.hpp"

namespace cpipe {

// Cross-section fields at one station. Every function is instantiated for
// double and Rational coefficients.

template <class T>
DiscPoly<T> eval_u1_0(const Station<T>& st);

template <class T>
DiscPoly<T> eval_u1_1(const Station<T>& st);

/// (R / 16 rho nu) [2 (R^2 p0')' - rho^2 R^2 p0''] (z2, z3)
template <class T>
VecPoly<T> eval_U1(const Station<T>& st);

template <class T>
DiscPoly<T> eval_p2(const Station<T>& st);

template <class T>
DiscPoly<T> eval_u1_2(const Station<T>& st);

template <class T>
struct U2Rhs {
  VecPoly<T> F;
  DiscPoly<T> g;
};

template <class T>
U2Rhs<T> build_U2_rhs(const Station<T>& st);

/// Potential with grad phi_A = U1 (the additive c(t, s1) set to 0).
template <class T>
DiscPoly<T> phi_A(const Station<T>& st);

/// Potential with Laplacian g and zero normal derivative (i(t, s1) set to 0).
template <class T>
DiscPoly<T> phi_B(const Station<T>& st);

template <class T>
struct PsiData {
  T psi2{0};
  T psi3{0};
  DiscPoly<T> psi;  // (psi2 z2 + psi3 z3) (rho^2 - 1) / 2
};

template <class T>
PsiData<T> eval_psi(const Station<T>& st);

template <class T>
struct U2Solution {
  VecPoly<T> U2;
  DiscPoly<T> p3;  // gauge: q^00 = q0^2 = 0
  VecPoly<T> W;
  DiscPoly<T> q2;
  DiscPoly<T> phi;
  PsiData<T> psi;
};

/// Throws ModelError when the disc integral of g is not zero (relative 1e-10).
template <class T>
U2Solution<T> solve_U2(const Station<T>& st, const U2Rhs<T>& rhs);

template <class T>
struct ExpansionFields {
  int order = 0;
  DiscPoly<T> u1_0, u1_1, u1_2;
  VecPoly<T> U1, U2;
  DiscPoly<T> p2, p3;
  DiscPoly<T> phiA, phiB;
  PsiData<T> psi;
  VecPoly<T> F, W;
  DiscPoly<T> g, q2;
};

/// Terms through `order` (0, 1 or 2); ConfigError otherwise.
template <class T>
ExpansionFields<T> compute_fields(const Station<T>& st, int order);

/// Truncated physical solution at one station:
/// u = sum eps^k (u1^k T + u2^k N + u3^k B), p = eps^-2 p0 + eps^-1 p1 + p2 (+ eps p3).
class SolutionEvaluator {
 public:
  SolutionEvaluator(double epsilon, int order, const FrenetFrame& frame, ExpansionFields<double> fields, double p0,
                    double p1, bool include_p3 = false);

  /// (axial, normal, binormal) components at z = s3 (cos s2, sin s2).
  Vec3 velocity_reference(double s2, double s3) const;
  Vec3 velocity_world(double s2, double s3) const;
  double pressure(double s2, double s3) const;
  int order() const { return order_; }

 private:
  double eps_;
  int order_;
  FrenetFrame frame_;
  ExpansionFields<double> fields_;
  double p0_, p1_;
  bool p3_;
};

SolutionEvaluator assemble_solution(double epsilon, int order, const FrenetFrame& frame,
                                    const ExpansionFields<double>& fields, double p0, double p1,
                                    bool include_p3 = false);

}  // namespace cpipe

#endif
