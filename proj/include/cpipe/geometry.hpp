#ifndef CPIPE_GEOMETRY_HPP
#define CPIPE_GEOMETRY_HPP

#include "cpipe/wall.hpp"

#include <Eigen/Dense>

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace cpipe {

using Vec3 = Eigen::Vector3d;

struct FrenetFrame {
  Vec3 position = Vec3::Zero();
  Vec3 T = Vec3::UnitZ();
  Vec3 N = Vec3::UnitX();
  Vec3 B = Vec3::UnitY();
  double kappa = 0.0;
  double dkappa = 0.0;
  double tau = 0.0;
  double dtau = 0.0;
};

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  /// Value and first three derivatives at x.
  std::array<double, 4> evaluate(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

class CenterCurve {
 public:
  enum class Kind { straight, circular_arc, helix, sampled };

  /// Straight segment from the origin along T with constant frame (N, B).
  static CenterCurve straight(double length, const Vec3& T = Vec3::UnitZ(), const Vec3& N = Vec3::UnitX());
  /// Planar arc of the given radius in the xy plane, starting at (radius, 0, 0).
  static CenterCurve circular_arc(double radius, double length);
  /// (a cos t, a sin t, b t) reparametrized by arc length.
  static CenterCurve helix(double a, double b, double length);
  /// Spline through samples (u_i, p_i); u need not be arc length.
  static CenterCurve sampled(std::vector<double> u, std::vector<Vec3> points);
  /// Delimited text with header and columns s, x, y, z.
  static CenterCurve from_csv(const std::filesystem::path& path);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  double length() const { return length_; }

  FrenetFrame frame(double s1) const;
  Vec3 position(double s1) const { return frame(s1).position; }
  /// Max curvature over `samples` equispaced points.
  double max_curvature(int samples = 257) const;

 private:
  struct SplineFrame {
    Vec3 pos, d1, d2, d3;
  };
  SplineFrame spline_at(double u) const;
  FrenetFrame sampled_frame(double s1) const;
  void sampled_curvature(double u, double& kappa, double& tau) const;
  double sampled_param(double s1) const;

  Kind kind_ = Kind::straight;
  double length_ = 1.0;
  double a_ = 0.0;  // arc radius, or helix a
  double b_ = 0.0;  // helix b
  Vec3 T0_ = Vec3::UnitZ(), N0_ = Vec3::UnitX();
  // sampled
  std::array<CubicSpline, 3> spline_;
  std::vector<double> u_knots_;
  std::vector<double> arc_at_knot_;  // cumulative arc length at the knots
};

FrenetFrame frenet_frame(const CenterCurve& curve, double s1);

/// Inverse-Jacobian rows of the reference map, in world coordinates.
struct InverseJacobian {
  Vec3 ds1_dx;
  Vec3 ds2_dx;
  Vec3 ds3_dx;
  double ds3_dt = 0.0;
};

/// epsilon-series coefficients d^q_k (q = 1..3, k = -1..kmax) of the rows,
/// d^q(eps) = sum_k eps^k d^q_k.
struct JacobianSeries {
  int kmax = 2;
  std::vector<std::array<Vec3, 3>> coeff;  // coeff[k + 1][q - 1]
  const Vec3& at(int q, int k) const { return coeff[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(q - 1)]; }
  std::array<Vec3, 3> sum(double eps) const;
};

/// Reference-domain map x = c(s1) + eps s3 R (cos s2 N + sin s2 B) for a
/// given wall state (time is carried by the wall state).
class TubeMap {
 public:
  TubeMap(const CenterCurve& curve, const WallState& wall, double epsilon);

  double epsilon() const { return eps_; }
  /// eps * max(kappa) * max(R); < 1 is required.
  double invertibility_bound() const { return bound_; }
  bool warning() const { return bound_ > 0.5; }

  Vec3 map_to_physical(double s1, double s2, double s3) const;
  InverseJacobian inverse_jacobian_rows(double s1, double s2, double s3) const;
  JacobianSeries inverse_jacobian_series(double s1, double s2, double s3, int kmax = 2) const;
  /// Columns dx/ds1, dx/ds2, dx/ds3.
  Eigen::Matrix3d forward_jacobian(double s1, double s2, double s3) const;

 private:
  struct Local {
    FrenetFrame f;
    double R, dR, Rt;
  };
  Local local(double s1) const;
  void check_point(const Local& l, double s1, double s2, double s3) const;

  const CenterCurve* curve_;
  const WallState* wall_;
  double eps_;
  double bound_ = 0.0;
};

}  // namespace cpipe

#endif
