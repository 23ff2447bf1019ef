#ifndef CPIPE_STATION_HPP
#define CPIPE_STATION_HPP

namespace cpipe {

struct FluidParams {
  double rho = 1.0;  // rho_0
  double nu = 1.0;   // kinematic viscosity
  void validate() const;
};

struct BodyForce {
  double b01 = 0.0;
  double b02 = 0.0;
  double b03 = 0.0;
};

/// Scalar data at one s1 station (one time level): wall, geometry, fluid and
/// pressure derivatives. Primes are d/ds1; dtdp0 is d2p0/(dt ds1).
template <class T>
struct Station {
  T R{1}, dR{0}, d2R{0}, Rt{0};
  T kappa{0}, dkappa{0}, tau{0};
  T rho{1}, nu{1};
  T dp0{0}, d2p0{0}, d3p0{0}, dtdp0{0};
  T dp1{0}, d2p1{0};
  T p02{0}, dp02{0};
  T b01{0}, b02{0}, b03{0};

  /// d/ds1 (R^2 p0')
  T ds_R2dp0() const { return T(2) * R * dR * dp0 + R * R * d2p0; }
  /// d2/ds1^2 (R^2 p0')
  T dss_R2dp0() const {
    return T(2) * dR * dR * dp0 + T(2) * R * d2R * dp0 + T(4) * R * dR * d2p0 + R * R * d3p0;
  }
  /// d/dt (R^2 p0')
  T dt_R2dp0() const { return T(2) * R * Rt * dp0 + R * R * dtdp0; }
  /// d/ds1 (R^2 p1')
  T ds_R2dp1() const { return T(2) * R * dR * dp1 + R * R * d2p1; }
};

}  // namespace cpipe

#endif
