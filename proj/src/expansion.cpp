#include "cpipe/expansion.hpp"

#include "cpipe/errors.hpp"

#include <cmath>
#include <numbers>

namespace cpipe {

namespace {

template <class T>
struct Basis {
  using P = DiscPoly<T>;
  P one = P::constant(T(1));
  P z2 = P::z2();
  P z3 = P::z3();
  P r2 = P::rho2();
  P r4 = r2 * r2;
  P r6 = r4 * r2;
  P c(const T& v) const { return P::constant(v); }
};

}  // namespace

template <class T>
DiscPoly<T> eval_u1_0(const Station<T>& st) {
  Basis<T> b;
  const T rn = st.rho * st.nu;
  return (st.R * st.R / (T(4) * rn) * st.dp0) * (b.r2 - b.one);
}

template <class T>
DiscPoly<T> eval_u1_1(const Station<T>& st) {
  Basis<T> b;
  const T rn = st.rho * st.nu;
  const T R = st.R;
  const auto bracket = (T(3) * R * R * R * st.kappa / (T(16) * rn) * st.dp0) * b.z2 + b.c(R * R / (T(4) * rn) * st.dp1);
  return bracket * (b.r2 - b.one);
}

template <class T>
VecPoly<T> eval_U1(const Station<T>& st) {
  Basis<T> b;
  const T rn = st.rho * st.nu;
  const T R = st.R;
  const auto s = (R / (T(16) * rn)) * (b.c(T(2) * st.ds_R2dp0()) - (R * R * st.d2p0) * b.r2);
  return {s * b.z2, s * b.z3};
}

template <class T>
DiscPoly<T> eval_p2(const Station<T>& st) {
  Basis<T> b;
  return (-st.R * st.R / T(4) * st.d2p0) * b.r2 + b.c(st.p02);
}

template <class T>
DiscPoly<T> eval_u1_2(const Station<T>& st) {
  Basis<T> b;
  const T& R = st.R;
  const T R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R6 = R4 * R2;
  const T& rho = st.rho;
  const T& nu = st.nu;
  const T rn = rho * nu;
  const T rn2 = rho * nu * nu;
  const T r2n3 = rho * rho * nu * nu * nu;
  const T k2 = st.kappa * st.kappa;

  const T A = R2 / T(16) *
              (R2 / (T(4) * rn2) * st.dtdp0 - R4 / (T(16) * r2n3) * st.dp0 * st.d2p0 - R2 / (T(2) * rn) * st.d3p0 +
               T(11) * k2 * R2 / (T(8) * rn) * st.dp0);
  const T B = R2 / T(4) *
              (-st.dt_R2dp0() / (T(4) * rn2) + R2 / (T(16) * r2n3) * st.dp0 * st.ds_R2dp0() +
               st.dss_R2dp0() / (T(4) * rn) - T(7) * k2 * R2 / (T(16) * rn) * st.dp0 + st.dp02 / rn - st.b01 / nu);
  const T C6 = R6 / (T(1152) * r2n3) * st.dp0 * st.d2p0;
  const T D = T(3) * st.kappa * R3 / (T(16) * rn) * st.dp1;
  const T E = T(5) * k2 * R4 / (T(64) * rn) * st.dp0;

  const auto bubble = b.r2 - b.one;
  return A * (b.r4 - b.one) + B * bubble + C6 * (b.r6 - b.one) + D * (bubble * b.z2) +
         E * (bubble * (b.z2 * b.z2 - b.z3 * b.z3));
}

template <class T>
U2Rhs<T> build_U2_rhs(const Station<T>& st) {
  Basis<T> b;
  const T& R = st.R;
  const T R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R6 = R4 * R2;
  const T& k = st.kappa;
  const T& dk = st.dkappa;
  const T& tau = st.tau;
  const T rn = st.rho * st.nu;
  const T r2n3 = st.rho * st.rho * st.nu * st.nu * st.nu;
  const T dp0sq = st.dp0 * st.dp0;

  U2Rhs<T> out;
  out.g = ((-k * R4 / (T(2) * rn) * st.d2p0 - T(3) * dk * R4 / (T(16) * rn) * st.dp0) * (b.z2 * b.r2)) +
          ((-T(3) * k * tau * R4 / (T(16) * rn) * st.dp0) * (b.z3 * b.r2)) +
          ((T(9) * k * R3 / (T(8) * rn) * st.dR * st.dp0 + T(9) * k * R4 / (T(16) * rn) * st.d2p0 +
            T(3) * dk * R4 / (T(16) * rn) * st.dp0) *
           b.z2) +
          ((T(3) * k * tau * R4 / (T(16) * rn) * st.dp0) * b.z3) + ((-R3 / (T(4) * rn) * st.d2p1) * b.r2) +
          b.c(R / (T(4) * rn) * st.ds_R2dp1());

  out.F.x = (k * R6 / (T(16) * r2n3) * dp0sq) * (b.r4 + b.one) +
            b.c(dk * R4 / (T(4) * rn) * st.dp0 + T(5) * R2 * k / (T(8) * rn) * st.ds_R2dp0()) +
            ((-k * R6 / (T(8) * r2n3) * dp0sq - T(9) * R4 * k / (T(16) * rn) * st.d2p0 -
              dk * R4 / (T(4) * rn) * st.dp0) *
             b.r2) +
            ((-k * R4 / (T(8) * rn) * st.d2p0) * (b.z2 * b.z2)) + b.c(-R2 / st.nu * st.b02);
  out.F.y = ((-k * tau * R4 / (T(4) * rn) * st.dp0) * (b.r2 - b.one)) +
            ((-T(2) * R4 * k / (T(16) * rn) * st.d2p0) * (b.z2 * b.z3)) + b.c(-R2 / st.nu * st.b03);
  return out;
}

template <class T>
DiscPoly<T> phi_A(const Station<T>& st) {
  Basis<T> b;
  const T rn = st.rho * st.nu;
  const T R = st.R;
  return (R / (T(16) * rn)) * (st.ds_R2dp0() * b.r2 - (R * R / T(4) * st.d2p0) * b.r4);
}

template <class T>
DiscPoly<T> phi_B(const Station<T>& st) {
  Basis<T> b;
  const T& R = st.R;
  const T R3 = R * R * R, R4 = R3 * R;
  const T& k = st.kappa;
  const T& dk = st.dkappa;
  const T& tau = st.tau;
  const T rn = st.rho * st.nu;
  const T a = T(8) * k * st.d2p0 + T(3) * dk * st.dp0;
  const T c = T(6) * k * st.dR * st.dp0 + T(3) * k * R * st.d2p0 + dk * R * st.dp0;

  const auto quartic = (-R4 / (T(384) * rn) * a) * b.z2 + (-k * tau * R4 / (T(128) * rn) * st.dp0) * b.z3 +
                       b.c(-R3 / (T(64) * rn) * st.d2p1);
  const auto quadratic = (T(3) * R3 / (T(128) * rn) * c) * b.z2 +
                         (T(3) * k * tau * R4 / (T(128) * rn) * st.dp0) * b.z3 +
                         b.c(R / (T(16) * rn) * st.ds_R2dp1());
  const auto linear = (T(5) * R4 / (T(384) * rn) * a - T(9) * R3 / (T(128) * rn) * c) * b.z2 +
                      (-T(4) * k * tau * R4 / (T(128) * rn) * st.dp0) * b.z3;
  return quartic * b.r4 + quadratic * b.r2 + linear;
}

template <class T>
PsiData<T> eval_psi(const Station<T>& st) {
  Basis<T> b;
  const T& R = st.R;
  const T R3 = R * R * R;
  const T rn = st.rho * st.nu;
  PsiData<T> p;
  p.psi3 = R3 / (T(384) * rn) *
           (T(22) * st.kappa * R * st.d2p0 + T(6) * st.dkappa * R * st.dp0 + T(108) * st.kappa * st.dR * st.dp0);
  p.psi2 = -st.kappa * st.tau * R3 * R / (T(64) * rn) * st.dp0;
  p.psi = (p.psi2 * b.z2 + p.psi3 * b.z3) * (b.r2 - b.one) * (T(1) / T(2));
  return p;
}

template <class T>
U2Solution<T> solve_U2(const Station<T>& st, const U2Rhs<T>& rhs) {
  const double integral = disc_integral(rhs.g);
  const double scale = std::numbers::pi * std::max(rhs.g.max_abs_coeff(), 1e-300);
  if (std::abs(integral) > 1e-10 * scale) {
    throw ModelError("compatibility violated: disc integral of g = " + std::to_string(integral), integral);
  }
  Basis<T> b;
  U2Solution<T> s;
  s.phi = phi_B(st);
  s.psi = eval_psi(st);
  const auto stokes = apply_tables(rhs.F);
  s.W = stokes.W;
  s.q2 = stokes.q;
  s.U2 = s.W + gradient(s.phi) + rotated_gradient(s.psi.psi);
  const T rn = st.rho * st.nu;
  s.p3 = (rn / st.R) * (s.q2 + rhs.g + (T(4) * s.psi.psi3) * b.z2 - (T(4) * s.psi.psi2) * b.z3);
  return s;
}

template <class T>
ExpansionFields<T> compute_fields(const Station<T>& st, int order) {
  if (order < 0 || order > 2) {
    throw ConfigError("unsupported expansion order " + std::to_string(order) + " (0, 1 or 2)", "expansion");
  }
  ExpansionFields<T> f;
  f.order = order;
  f.u1_0 = eval_u1_0(st);
  if (order >= 1) {
    f.u1_1 = eval_u1_1(st);
    f.U1 = eval_U1(st);
    f.p2 = eval_p2(st);
    f.phiA = phi_A(st);
  }
  if (order >= 2) {
    f.u1_2 = eval_u1_2(st);
    const auto rhs = build_U2_rhs(st);
    f.F = rhs.F;
    f.g = rhs.g;
    const auto sol = solve_U2(st, rhs);
    f.U2 = sol.U2;
    f.p3 = sol.p3;
    f.W = sol.W;
    f.q2 = sol.q2;
    f.phiB = sol.phi;
    f.psi = sol.psi;
  }
  return f;
}

#define CPIPE_INSTANTIATE(T)                                          \
  template DiscPoly<T> eval_u1_0(const Station<T>&);                  \
  template DiscPoly<T> eval_u1_1(const Station<T>&);                  \
  template VecPoly<T> eval_U1(const Station<T>&);                     \
  template DiscPoly<T> eval_p2(const Station<T>&);                    \
  template DiscPoly<T> eval_u1_2(const Station<T>&);                  \
  template U2Rhs<T> build_U2_rhs(const Station<T>&);                  \
  template DiscPoly<T> phi_A(const Station<T>&);                      \
  template DiscPoly<T> phi_B(const Station<T>&);                      \
  template PsiData<T> eval_psi(const Station<T>&);                    \
  template U2Solution<T> solve_U2(const Station<T>&, const U2Rhs<T>&); \
  template ExpansionFields<T> compute_fields(const Station<T>&, int);

CPIPE_INSTANTIATE(double)
CPIPE_INSTANTIATE(Rational)
#undef CPIPE_INSTANTIATE

SolutionEvaluator::SolutionEvaluator(double epsilon, int order, const FrenetFrame& frame,
                                     ExpansionFields<double> fields, double p0, double p1, bool include_p3)
    : eps_(epsilon), order_(order), frame_(frame), fields_(std::move(fields)), p0_(p0), p1_(p1), p3_(include_p3) {
  if (order < 0 || order > 2) {
    throw ConfigError("unsupported expansion order " + std::to_string(order) + " (0, 1 or 2)", "expansion");
  }
  if (fields_.order < order) throw ConfigError("fields were computed to a lower order", "expansion");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative", "expansion");
}

Vec3 SolutionEvaluator::velocity_reference(double s2, double s3) const {
  const double z2 = s3 * std::cos(s2), z3 = s3 * std::sin(s2);
  Vec3 u(fields_.u1_0.evaluate_double(z2, z3), 0.0, 0.0);  // U0 = 0
  if (order_ >= 1) {
    u += eps_ * Vec3(fields_.u1_1.evaluate_double(z2, z3), fields_.U1.x.evaluate_double(z2, z3),
                     fields_.U1.y.evaluate_double(z2, z3));
  }
  if (order_ >= 2) {
    u += eps_ * eps_ *
         Vec3(fields_.u1_2.evaluate_double(z2, z3), fields_.U2.x.evaluate_double(z2, z3),
              fields_.U2.y.evaluate_double(z2, z3));
  }
  return u;
}

Vec3 SolutionEvaluator::velocity_world(double s2, double s3) const {
  const Vec3 u = velocity_reference(s2, s3);
  return u[0] * frame_.T + u[1] * frame_.N + u[2] * frame_.B;
}

double SolutionEvaluator::pressure(double s2, double s3) const {
  if (eps_ == 0.0) throw ConfigError("pressure expansion is singular at epsilon = 0", "expansion");
  const double z2 = s3 * std::cos(s2), z3 = s3 * std::sin(s2);
  double p = p0_ / (eps_ * eps_) + p1_ / eps_;
  if (order_ >= 1) p += fields_.p2.evaluate_double(z2, z3);
  if (order_ >= 2 && p3_) p += eps_ * fields_.p3.evaluate_double(z2, z3);
  return p;
}

SolutionEvaluator assemble_solution(double epsilon, int order, const FrenetFrame& frame,
                                    const ExpansionFields<double>& fields, double p0, double p1, bool include_p3) {
  return SolutionEvaluator(epsilon, order, frame, fields, p0, p1, include_p3);
}

}  // namespace cpipe
