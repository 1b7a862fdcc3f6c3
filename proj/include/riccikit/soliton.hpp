#pragma once
#include <optional>

#include "riccikit/curvature.hpp"

namespace riccikit {

// Potential evaluator with analytic gradient/Hessian; missing levels fall
// back to central FD of the value (same stepping policy as the metric).
struct PotentialEval {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;
};

// Declared fibration of a chart whose level sets are coordinate slices:
// embed(level, theta) maps a fiber parameter point to chart coordinates.
struct Fibration {
  std::function<Vec(double, const Vec&)> embed;
  Box fiber_domain;
  double level_min = 0.0, level_max = 0.0;
};

// A chart paired with a potential and soliton constant rho, in the
// convention Ric + Hess f = rho g. The steady factory accepts the potential
// F of Ric = Hess F and stores f = -F, so the Cotton/Weyl relation
// D = C + W(.,.,.,grad f) and its F-form are one code path.
struct SolitonChart {
  CoordinateChart chart;
  PotentialEval f;
  double rho = 0.0;
  bool steady_from_F = false;
  std::optional<double> hamilton_constant;
  std::optional<Fibration> fibration;

  static SolitonChart steady(CoordinateChart chart, PotentialEval F_eval);
  static SolitonChart general(CoordinateChart chart, PotentialEval f_eval, double rho);

  double f_value(const Vec& x) const;
  Vec f_grad(const Vec& x) const;
  Mat f_hess(const Vec& x) const;  // plain second partials, no Christoffels
  Mat f_cov_hess(const Vec& x) const;

  // |grad f|_g below 1e-7 * (1 + |f|) marks a critical point; level-set
  // dependent operations refuse to run there.
  bool near_critical(const Vec& x) const;
  void require_regular(const Vec& x) const;
};

enum class DMethod { direct, via_weyl };

struct HamiltonReport {
  double grad_residual = 0.0;  // ||grad R + 2 Ric(grad F)||_g
  double energy = 0.0;         // R + |grad F|^2
};

struct BachConsistency {
  double residual_routes = 0.0;  // div-Cotton route vs div-div-Weyl route
  double residual_from_d = 0.0;  // div-Cotton route vs the D-tensor formula
};

// Four characterizations of D-flatness, reported as residual norms in the
// frame adapted to grad f. On a genuine soliton they are small or large
// together; item (d) needs n >= 4.
struct DFlatEquivalents {
  double a = 0.0;  // ||D||
  double b = 0.0;  // ||C|| + ||W(e1,.,.,.)||
  double c = 0.0;  // ||C(grad f,.,.)|| + ||W(e1,ea,e1,eb)||
  double d = 0.0;  // |div B . grad f| + ||W(e1,ea,e1,eb)||
};

struct DNormIdentity {
  double lhs = 0.0;  // |D|^2
  double rhs = 0.0;  // level-set form: umbilicity deficit + tangential grad R
  double residual = 0.0;
};

struct SolitonPointReport {
  Vec point;
  double soliton_residual = 0.0;
  Vec grad_f;
  Tensor3 d_direct;
  Tensor3 d_via_weyl;
  double d_norm = 0.0;
  double d_skew_residual = 0.0;
  double d_trace_residual = 0.0;
  double d_contraction_residual = 0.0;  // ||(D - C) . grad f||
  double d_method_gap = 0.0;            // ||direct - via_weyl||
  std::optional<HamiltonReport> hamilton;
  std::optional<BachConsistency> bach;
  std::optional<DFlatEquivalents> dflat;
  double riemann_norm = 0.0;  // scale reference for relative thresholds
};

double soliton_residual(const SolitonChart& s, const Vec& point);
HamiltonReport hamilton_identities(const SolitonChart& s, const Vec& point);
Tensor3 d_tensor(const SolitonChart& s, const Vec& point, DMethod method);
BachConsistency bach_consistency(const SolitonChart& s, const Vec& point);
DFlatEquivalents d_flat_equivalents(const SolitonChart& s, const Vec& point);
DNormIdentity d_norm_identity(const SolitonChart& s, const Vec& point);

// Everything at once, with the dimension-gated pieces filled where defined.
SolitonPointReport point_report(const SolitonChart& s, const Vec& point, bool with_order4 = true);

// A tensor counts as zero when its g-norm is below tol * (1 + ||Rm||).
inline bool relatively_zero(double norm, double tol, double riemann_norm) {
  return norm < tol * (1.0 + riemann_norm);
}

}  // namespace riccikit
