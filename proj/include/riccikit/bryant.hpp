#pragma once
#include "riccikit/warped.hpp"

namespace riccikit {
namespace bryant {

// Rotationally symmetric steady construction over the unit round S^{n-1}
// fiber (lambda = n-2). The trajectory is normalized by the scalar curvature
// at the tip, which equals the conserved energy R + |grad F|^2 there.
struct BryantConfig {
  int n = 4;
  double normalization = 1.0;  // target R(0)
  double r_max = 1e3;
  double r_seed = 1e-3;   // series -> integrator handoff radius
  int series_order = 7;   // highest power kept in the origin series
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double grid_density = 0.01;  // node spacing ~ density * (1 + r)
};

// Taylor data at the tip: phi odd (phi'(0) = 1), F even; coefficients are
// solved order by order from the steady system, F''(0) from R(0) = 2 n F2.
struct OriginSeries {
  int n = 0;
  double lambda = 0.0;
  std::vector<double> phi_odd;  // phi = sum phi_odd[k] r^{2k+1}
  std::vector<double> F_even;   // F   = sum F_even[k]  r^{2k}

  double phi(double r, int deriv = 0) const;
  double F(double r, int deriv = 0) const;
  // max residual of the two steady equations evaluated on the truncated series
  double system_residual(double r) const;
};

OriginSeries origin_series(const BryantConfig& cfg);

WarpedProfile integrate(const BryantConfig& cfg);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double residual_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct AsymptoticsReport {
  double curvature_decay_exponent = 0.0;  // slope of log R vs log r on the tail
  double volume_growth_exponent = 0.0;    // slope of log Vol(B_r) vs log r
  double phi_growth_exponent = 0.0;
  double curvature_fit_stderr = 0.0;
  double volume_fit_stderr = 0.0;
  double phi_fit_stderr = 0.0;
  bool curvature_degenerate = false;  // R identically ~0 on the tail
  double energy_constant = 0.0;       // mean of R + |F'|^2 over the grid
  double energy_spread = 0.0;         // max - min over the grid
  double tail_lo = 0.0, tail_hi = 0.0;
};

// Log-log fits over the last decade of the grid; needs the tail to span at
// least one decade in r.
AsymptoticsReport asymptotics(const WarpedProfile& p);

double unit_sphere_area(int dim);  // area of S^dim with radius 1

// Assembled chart + potential + fibration for a Bryant profile (round fiber).
SolitonChart as_soliton(const WarpedProfile& p);

}  // namespace bryant
}  // namespace riccikit
