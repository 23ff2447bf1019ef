#ifndef CPIPE_VERIFY_HPP
#define CPIPE_VERIFY_HPP

#include "cpipe/expansion.hpp"
#include "cpipe/pressure.hpp"
#include "cpipe/wall.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cpipe {

struct FlowRates {
  std::vector<double> s1;
  std::vector<double> Q0, Q1, Q2;
  std::vector<double> A0;  // pi R^2
};

/// Q^k = R^2 * (disc integral of u1^k), one entry per station.
FlowRates flow_rates(const std::vector<double>& s1, const std::vector<ExpansionFields<double>>& fields,
                     const std::vector<double>& R);

struct ConservationReport {
  // interior-node residuals of dQ0/ds1 + dA0/dt, dQ1/ds1 and dQ2/ds1
  std::vector<double> r0, r1, r2;
  double max_r0 = 0.0, max_r1 = 0.0, max_r2 = 0.0;
  double scale0 = 0.0;  // max |dA0/dt|, for context
};

/// Uses the solver's midpoint fluxes, Q^k_{i+1/2} from a_{i+1/2} = (R_i^4 + R_{i+1}^4)/2.
ConservationReport check_mass_conservation(const WallState& wall, const FluidParams& fluid,
                                           const PressureExpansion& pe);

struct CompatibilityReport {
  std::vector<double> u1_defect;  // (2 pi R / 16 rho nu)(2 (R^2 p0')' - R^2 p0'') - 2 pi Rt
  std::vector<double> u2_defect;  // disc integral of g
  double max_u1 = 0.0, max_u2 = 0.0;
  double scale_u1 = 0.0, scale_u2 = 0.0;
};

CompatibilityReport check_compatibility(const std::vector<Station<double>>& stations);

/// One identity of the grouped-order problems, evaluated as a polynomial residual.
struct ResidualItem {
  std::string problem;
  std::string part;
  double max_abs = 0.0;  // largest residual coefficient
  double scale = 0.0;    // largest coefficient of the terms compared
  bool exact_zero = false;
  bool passes(double rel_tol) const { return exact_zero || max_abs <= rel_tol * std::max(scale, 1e-300); }
};

/// Residuals of the defining problems, written independently of the closed forms.
/// Boundary checks need Rt, d2p1 consistent with the p0 and p1 equations.
template <class T>
std::vector<ResidualItem> grouped_order_residuals(const Station<T>& st);

/// Station data with Rt and d2p1 replaced by the values the p0 and p1 equations force.
template <class T>
Station<T> make_consistent(Station<T> st);

struct ConvergenceRow {
  std::size_t n = 0;
  double h = 0.0;
  double error = 0.0;
  double order = 0.0;  // vs. previous row; 0 for the first
  bool at_floor = false;
};

struct ConvergenceStudy {
  std::string name;
  std::vector<ConvergenceRow> rows;
  double observed_order = 0.0;  // from the last pair not at the floor
  bool floor_detected = false;
};

/// A 1D problem with a known solution for grid studies.
struct ConvergenceCase {
  std::string name;
  enum class Unknown { p0, p1, p02 } unknown = Unknown::p0;
  std::function<double(double)> R;
  std::function<double(double)> exact;
  double length = 1.0;
  PressureBC bc;
  FluidParams fluid;
};

ConvergenceStudy run_convergence_study(const ConvergenceCase& c, const std::vector<std::size_t>& sizes);

/// Built-in cases with quadrature oracles.
ConvergenceCase nonuniform_p0_case();   // R = (1+s)^(-1/4), p0(0)=0, p0(1)=1
ConvergenceCase nonuniform_p1_case();   // same R, p1(0)=1, p1(1)=0
ConvergenceCase nonuniform_p02_case();  // same R and p0, zero data for p0^2
ConvergenceCase constant_p0_case();     // R = 1, linear solution

}  // namespace cpipe

#endif
