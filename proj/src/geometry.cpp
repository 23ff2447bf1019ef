#include "cpipe/geometry.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cpipe {

namespace {

Vec3 orthonormal_to(const Vec3& T, const Vec3& hint) {
  Vec3 n = hint - hint.dot(T) * T;
  if (n.norm() < 1e-8) {
    // hint parallel to T: fall back to the axis least aligned with T
    Eigen::Index i = 0;
    T.cwiseAbs().minCoeff(&i);
    Vec3 e = Vec3::Zero();
    e[i] = 1.0;
    n = e - e.dot(T) * T;
  }
  return n.normalized();
}

// 5-point Gauss-Legendre on [0, 1]
constexpr std::array<double, 5> kGaussX = {0.046910077030668, 0.230765344947158, 0.5, 0.769234655052842,
                                           0.953089922969332};
constexpr std::array<double, 5> kGaussW = {0.118463442528095, 0.239314335249683, 0.284444444444444,
                                           0.239314335249683, 0.118463442528095};

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n < 3) return;
  // tridiagonal system for interior second derivatives, natural ends
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
    if (i == 1) break;
  }
}

std::array<double, 4> CubicSpline::evaluate(double x) const {
  const std::size_t n = x_.size();
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, n - 2);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h;
  const double B = (x - x_[i]) / h;
  const double y0 = y_[i], y1 = y_[i + 1], m0 = m_[i], m1 = m_[i + 1];
  const double v = A * y0 + B * y1 + ((A * A * A - A) * m0 + (B * B * B - B) * m1) * h * h / 6.0;
  const double d1 = (y1 - y0) / h - (3.0 * A * A - 1.0) / 6.0 * h * m0 + (3.0 * B * B - 1.0) / 6.0 * h * m1;
  const double d2 = A * m0 + B * m1;
  const double d3 = (m1 - m0) / h;
  return {v, d1, d2, d3};
}

CenterCurve CenterCurve::straight(double length, const Vec3& T, const Vec3& N) {
  if (!(length > 0.0)) throw GeometryError("curve length must be positive");
  if (T.norm() == 0.0) throw GeometryError("straight curve needs a nonzero direction");
  CenterCurve c;
  c.kind_ = Kind::straight;
  c.length_ = length;
  c.T0_ = T.normalized();
  c.N0_ = orthonormal_to(c.T0_, N);
  return c;
}

CenterCurve CenterCurve::circular_arc(double radius, double length) {
  if (!(radius > 0.0)) throw GeometryError("arc radius must be positive");
  if (!(length > 0.0)) throw GeometryError("curve length must be positive");
  CenterCurve c;
  c.kind_ = Kind::circular_arc;
  c.length_ = length;
  c.a_ = radius;
  return c;
}

CenterCurve CenterCurve::helix(double a, double b, double length) {
  if (!(a > 0.0)) throw GeometryError("helix radius must be positive");
  if (!(length > 0.0)) throw GeometryError("curve length must be positive");
  CenterCurve c;
  c.kind_ = Kind::helix;
  c.length_ = length;
  c.a_ = a;
  c.b_ = b;
  return c;
}

CenterCurve CenterCurve::sampled(std::vector<double> u, std::vector<Vec3> points) {
  if (u.size() != points.size()) throw GeometryError("sample parameter and point counts differ");
  if (u.size() < 4) throw GeometryError("sampled curve needs at least 4 points");
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (!(u[i + 1] > u[i])) throw GeometryError("sample parameter must be strictly increasing");
    if ((points[i + 1] - points[i]).norm() <= 1e-14 * std::max(scale, 1.0)) {
      throw GeometryError("degenerate sampled curve: repeated point at sample " + std::to_string(i + 1));
    }
  }
  CenterCurve c;
  c.kind_ = Kind::sampled;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) y[i] = points[i][k];
    c.spline_[static_cast<std::size_t>(k)] = CubicSpline(u, std::move(y));
  }
  c.u_knots_ = u;
  c.arc_at_knot_.assign(u.size(), 0.0);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double h = u[i + 1] - u[i];
    double seg = 0.0;
    for (std::size_t g = 0; g < kGaussX.size(); ++g) {
      seg += kGaussW[g] * c.spline_at(u[i] + kGaussX[g] * h).d1.norm();
    }
    c.arc_at_knot_[i + 1] = c.arc_at_knot_[i] + seg * h;
  }
  c.length_ = c.arc_at_knot_.back();
  if (!(c.length_ > 0.0)) throw GeometryError("degenerate sampled curve: zero length");
  return c;
}

CenterCurve CenterCurve::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open curve samples " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw GeometryError("empty curve file " + path.string());
  std::vector<double> u;
  std::vector<Vec3> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double s, x, y, z;
    if (!(ls >> s >> x >> y >> z)) {
      throw GeometryError(path.string() + ":" + std::to_string(lineno) + ": expected s, x, y, z");
    }
    u.push_back(s);
    pts.emplace_back(x, y, z);
  }
  return sampled(std::move(u), std::move(pts));
}

std::string CenterCurve::kind_name() const {
  switch (kind_) {
    case Kind::straight: return "straight";
    case Kind::circular_arc: return "arc";
    case Kind::helix: return "helix";
    case Kind::sampled: return "sampled";
  }
  return "unknown";
}

CenterCurve::SplineFrame CenterCurve::spline_at(double u) const {
  SplineFrame f;
  for (int k = 0; k < 3; ++k) {
    const auto v = spline_[static_cast<std::size_t>(k)].evaluate(u);
    f.pos[k] = v[0];
    f.d1[k] = v[1];
    f.d2[k] = v[2];
    f.d3[k] = v[3];
  }
  return f;
}

double CenterCurve::sampled_param(double s1) const {
  auto it = std::upper_bound(arc_at_knot_.begin(), arc_at_knot_.end(), s1);
  std::size_t i = it == arc_at_knot_.begin() ? 0 : static_cast<std::size_t>(it - arc_at_knot_.begin()) - 1;
  i = std::min(i, u_knots_.size() - 2);
  const double u0 = u_knots_[i];
  const double target = s1 - arc_at_knot_[i];
  auto arc = [&](double u) {
    const double h = u - u0;
    double seg = 0.0;
    for (std::size_t g = 0; g < kGaussX.size(); ++g) seg += kGaussW[g] * spline_at(u0 + kGaussX[g] * h).d1.norm();
    return seg * h;
  };
  // safeguarded Newton on arc(u) = target
  double lo = u0, hi = u_knots_[i + 1];
  double u = lo + (hi - lo) * std::clamp(target / (arc_at_knot_[i + 1] - arc_at_knot_[i]), 0.0, 1.0);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = arc(u) - target;
    if (std::abs(f) <= 1e-15 * std::max(1.0, length_)) break;
    (f > 0 ? hi : lo) = u;
    double next = u - f / spline_at(u).d1.norm();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) break;
    u = next;
  }
  return u;
}

FrenetFrame CenterCurve::sampled_frame(double s1) const {
  const double u = sampled_param(s1);
  const SplineFrame sf = spline_at(u);
  const Vec3& a = sf.d1;
  const Vec3& b = sf.d2;
  const Vec3& r3 = sf.d3;
  const double sp = a.norm();
  FrenetFrame f;
  f.position = sf.pos;
  f.T = a / sp;
  const Vec3 c = a.cross(b);
  const double cn = c.norm();
  if (cn <= 1e-10 * sp * sp * sp) {
    f.N = orthonormal_to(f.T, Vec3::UnitX());
    f.B = f.T.cross(f.N);
    return f;
  }
  f.B = c / cn;
  f.N = f.B.cross(f.T);
  f.kappa = cn / (sp * sp * sp);
  f.tau = c.dot(r3) / (cn * cn);
  // derivatives in u, converted to arc length (r'''' = 0 on each spline piece)
  const Vec3 dc = a.cross(r3);
  const double dcn = c.dot(dc) / cn;
  const double dsp = a.dot(b) / sp;
  const double dkappa_du = dcn / (sp * sp * sp) - 3.0 * cn * dsp / (sp * sp * sp * sp);
  const double dtau_du = dc.dot(r3) / (cn * cn) - 2.0 * c.dot(r3) * c.dot(dc) / (cn * cn * cn * cn);
  f.dkappa = dkappa_du / sp;
  f.dtau = dtau_du / sp;
  return f;
}

FrenetFrame CenterCurve::frame(double s1) const {
  const double tol = 1e-12 * std::max(1.0, length_);
  if (s1 < -tol || s1 > length_ + tol) {
    throw GeometryError("s1 = " + std::to_string(s1) + " outside [0, " + std::to_string(length_) + "]");
  }
  s1 = std::clamp(s1, 0.0, length_);
  FrenetFrame f;
  switch (kind_) {
    case Kind::straight:
      f.position = s1 * T0_;
      f.T = T0_;
      f.N = N0_;
      f.B = T0_.cross(N0_);
      break;
    case Kind::circular_arc: {
      const double th = s1 / a_;
      f.position = Vec3(a_ * std::cos(th), a_ * std::sin(th), 0.0);
      f.T = Vec3(-std::sin(th), std::cos(th), 0.0);
      f.N = Vec3(-std::cos(th), -std::sin(th), 0.0);
      f.B = Vec3::UnitZ();
      f.kappa = 1.0 / a_;
      break;
    }
    case Kind::helix: {
      const double c = std::hypot(a_, b_);
      const double th = s1 / c;
      const double ct = std::cos(th), st = std::sin(th);
      f.position = Vec3(a_ * ct, a_ * st, b_ * th);
      f.T = Vec3(-a_ * st, a_ * ct, b_) / c;
      f.N = Vec3(-ct, -st, 0.0);
      f.B = Vec3(b_ * st, -b_ * ct, a_) / c;
      f.kappa = a_ / (c * c);
      f.tau = b_ / (c * c);
      break;
    }
    case Kind::sampled:
      f = sampled_frame(s1);
      break;
  }
  return f;
}

double CenterCurve::max_curvature(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    m = std::max(m, frame(length_ * i / (samples - 1)).kappa);
  }
  return m;
}

FrenetFrame frenet_frame(const CenterCurve& curve, double s1) { return curve.frame(s1); }

std::array<Vec3, 3> JacobianSeries::sum(double eps) const {
  std::array<Vec3, 3> r{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (int k = -1; k <= kmax; ++k) {
    const double w = std::pow(eps, k);
    for (int q = 1; q <= 3; ++q) r[static_cast<std::size_t>(q - 1)] += w * at(q, k);
  }
  return r;
}

TubeMap::TubeMap(const CenterCurve& curve, const WallState& wall, double epsilon)
    : curve_(&curve), wall_(&wall), eps_(epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive", "geometry");
  if (std::abs(wall.grid.length() - curve.length()) > 1e-9 * curve.length()) {
    throw GeometryError("wall grid length does not match the curve length");
  }
  double kmax = 0.0, worst_s = 0.0, worst = -1.0;
  for (std::size_t i = 0; i < wall.grid.size(); ++i) {
    const double s = wall.grid.node(i);
    const double k = curve.frame(std::min(s, curve.length())).kappa;
    kmax = std::max(kmax, k);
    if (k * wall.R[i] > worst) {
      worst = k * wall.R[i];
      worst_s = s;
    }
  }
  bound_ = eps_ * kmax * wall.max_radius();
  if (bound_ >= 1.0) {
    throw MapError("reference map not invertible: eps*max(kappa)*max(R) = " + std::to_string(bound_), worst_s);
  }
}

TubeMap::Local TubeMap::local(double s1) const {
  Local l;
  l.f = curve_->frame(s1);
  l.R = interpolate(wall_->grid, wall_->R, s1);
  l.dR = interpolate(wall_->grid, wall_->dR, s1);
  l.Rt = interpolate(wall_->grid, wall_->Rt, s1);
  return l;
}

void TubeMap::check_point(const Local& l, double s1, double s2, double s3) const {
  if (s3 < 0.0 || s3 > 1.0) throw MapError("s3 outside [0, 1]", s1);
  if (eps_ * l.f.kappa * s3 * l.R * std::cos(s2) >= 1.0) throw MapError("reference map not invertible", s1);
}

Vec3 TubeMap::map_to_physical(double s1, double s2, double s3) const {
  const Local l = local(s1);
  check_point(l, s1, s2, s3);
  return l.f.position + eps_ * s3 * l.R * (std::cos(s2) * l.f.N + std::sin(s2) * l.f.B);
}

InverseJacobian TubeMap::inverse_jacobian_rows(double s1, double s2, double s3) const {
  const Local l = local(s1);
  check_point(l, s1, s2, s3);
  if (s3 == 0.0) throw MapError("ds2/dx is singular on the axis (s3 = 0)", s1);
  const double c = std::cos(s2), s = std::sin(s2);
  const double D = 1.0 - eps_ * l.f.kappa * s3 * l.R * c;
  const Vec3 radial = c * l.f.N + s * l.f.B;
  const Vec3 angular = -s * l.f.N + c * l.f.B;
  InverseJacobian j;
  j.ds1_dx = l.f.T / D;
  j.ds2_dx = -l.f.tau * l.f.T / D + angular / (eps_ * s3 * l.R);
  j.ds3_dx = -(s3 * l.dR / (l.R * D)) * l.f.T + radial / (eps_ * l.R);
  j.ds3_dt = -s3 * l.Rt / l.R;
  return j;
}

JacobianSeries TubeMap::inverse_jacobian_series(double s1, double s2, double s3, int kmax) const {
  const Local l = local(s1);
  check_point(l, s1, s2, s3);
  if (s3 == 0.0) throw MapError("ds2/dx is singular on the axis (s3 = 0)", s1);
  const double c = std::cos(s2), s = std::sin(s2);
  const double b = l.f.kappa * s3 * l.R * c;
  JacobianSeries js;
  js.kmax = kmax;
  js.coeff.assign(static_cast<std::size_t>(kmax + 2), {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()});
  js.coeff[0][1] = (-s * l.f.N + c * l.f.B) / (s3 * l.R);
  js.coeff[0][2] = (c * l.f.N + s * l.f.B) / l.R;
  double bk = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    auto& row = js.coeff[static_cast<std::size_t>(k + 1)];
    row[0] = bk * l.f.T;
    row[1] = -l.f.tau * bk * l.f.T;
    row[2] = -(s3 * l.dR / l.R) * bk * l.f.T;
    bk *= b;
  }
  return js;
}

Eigen::Matrix3d TubeMap::forward_jacobian(double s1, double s2, double s3) const {
  const Local l = local(s1);
  check_point(l, s1, s2, s3);
  const double c = std::cos(s2), s = std::sin(s2);
  const Vec3 radial = c * l.f.N + s * l.f.B;
  const Vec3 angular = -s * l.f.N + c * l.f.B;
  Eigen::Matrix3d J;
  J.col(0) = (1.0 - eps_ * l.f.kappa * s3 * l.R * c) * l.f.T + eps_ * s3 * l.dR * radial +
             eps_ * s3 * l.R * l.f.tau * angular;
  J.col(1) = eps_ * s3 * l.R * angular;
  J.col(2) = eps_ * l.R * radial;
  return J;
}

}  // namespace cpipe
