#pragma once
#include "riccikit/soliton.hpp"

namespace riccikit {

// Geometry of the potential level set through a point. The unit normal e1
// points along the gradient of the potential in the user-facing convention
// (+grad F for steady charts built from F, +grad f otherwise); with that
// sign the level spheres of the radial fixtures carry h = (phi'/phi) gbar.
struct LevelSetReport {
  Vec point;
  Vec unit_normal;               // coordinate components of e1
  Mat h;                         // second fundamental form, tangential orthonormal frame
  double H = 0.0;                // mean curvature, trace of h
  double umbilicity_deficit = 0.0;  // ||h - H/(n-1) g||
  double normal_ricci_mix = 0.0;    // max_a |Ric(e1, e_a)|
  double normal_eigenvalue = 0.0;   // Ric(e1, e1)
  std::vector<std::pair<double, int>> ricci_eigs;  // clustered (value, multiplicity)
};

LevelSetReport level_diagnostics(const SolitonChart& s, const Vec& point);

// Spread (max minus min) of R, |grad f|^2 and H over `samples` points of the
// coordinate slice at `level` of the declared fibration.
struct ConstancyScan {
  double spread_scalar = 0.0;
  double spread_grad2 = 0.0;
  double spread_mean_curvature = 0.0;
};

ConstancyScan constancy_scan(const SolitonChart& s, double level, int samples, uint64_t seed = 1);

// Relative-gap clustering used for the "unique vs two distinct eigenvalues"
// decision; gap defaults to 1e-4.
std::vector<std::pair<double, int>> cluster_eigenvalues(const Vec& eigs, double rel_gap = 1e-4);

}  // namespace riccikit
