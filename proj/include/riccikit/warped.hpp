#pragma once
#include "riccikit/soliton.hpp"

namespace riccikit {

// Piecewise-quintic Hermite interpolant matching value, first and second
// derivative at every node; globally C^2. Exact for polynomials of degree
// five, O(h^6) otherwise.
class QuinticHermite {
public:
  QuinticHermite() = default;
  QuinticHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy,
                 std::vector<double> d2y);
  double eval(double x, int deriv = 0) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

private:
  std::vector<double> x_, y_, dy_, d2y_;
  int find_interval(double x) const;
};

// Natural cubic spline; used for the third derivative channel where only
// values are tabulated.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double eval(double x) const;

private:
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at nodes
  int find_interval(double x) const;
};

// Einstein fiber (Sigma, gbar) with Ric(gbar) = lambda gbar. The chart, when
// present, is validated against lambda by the fixture tests.
struct FiberSpec {
  int fiber_dim = 0;
  double einstein_lambda = 0.0;
  std::optional<CoordinateChart> fiber_chart;
};

// Sampled radial data for ds^2 = dr^2 + phi^2(r) gbar with potential F(r).
struct WarpedProfile {
  std::vector<double> r, phi, dphi, d2phi, d3phi, F, dF, d2F;
  int n = 0;           // total dimension (1 + fiber dim)
  double lambda = 0.0; // fiber Einstein constant

  size_t size() const { return r.size(); }
  void validate() const;  // grid strictly increasing, phi > 0 on the interior
};

struct WarpedCurvature {
  double ricci_radial = 0.0;      // R_11 = -(n-1) phi''/phi
  double ricci_fiber_coeff = 0.0; // R_ab = coeff * gbar_ab
  double scalar = 0.0;
};
WarpedCurvature warped_curvature(int n, double lambda, double phi, double dphi, double d2phi);

struct WarpedHessian {
  double radial = 0.0;       // nabla_1 nabla_1 F = F''
  double fiber_coeff = 0.0;  // nabla_a nabla_b F = coeff * gbar_ab; mixed components vanish
};
WarpedHessian warped_hessian(double dF, double d2F, double phi, double dphi);

// (phi'', F'') of the steady system, solving the second displayed equation
// for phi'': phi'' = (lambda - (n-2) phi'^2 - phi phi' F') / phi.
std::pair<double, double> steady_rhs(double phi, double dphi, double dF, int n, double lambda);

// Profile CSV: header row, columns r, phi, dphi, d2phi, d3phi, F, dF, d2F,
// scientific notation with 17 significant digits. Dimension and lambda ride
// in a '# n=<n> lambda=<v>' comment line above the header.
void write_profile_csv(const WarpedProfile& p, const std::string& path);
WarpedProfile read_profile_csv(const std::string& path);

// Radial function given by closed forms; the assembled chart differentiates
// these analytically.
struct RadialFn {
  std::function<double(double)> v, d1, d2, d3;
};

struct WarpedChart {
  CoordinateChart chart;
  PotentialEval potential_F;  // F as a function of the chart point
  Fibration fibration;
};

// Block chart r x fiber with g_rr = 1, g_ab = phi^2 gbar_ab. The fiber chart
// must carry analytic derivatives through the requested order.
WarpedChart make_warped_chart(RadialFn phi, RadialFn F, const CoordinateChart& fiber,
                              double r_lo, double r_hi, const std::string& label);

// Spline-backed assembly from a sampled profile. Fails with grid-too-coarse
// for fewer than eight nodes and missing-fiber-chart without an explicit
// fiber.
WarpedChart profile_to_chart(const WarpedProfile& p, const FiberSpec& fiber);

// Convenience: assembled chart as a steady soliton (stores f = -F).
SolitonChart warped_steady_soliton(const WarpedProfile& p, const FiberSpec& fiber);

}  // namespace riccikit
