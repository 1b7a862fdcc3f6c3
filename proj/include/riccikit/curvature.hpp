#pragma once
#include <optional>

#include "riccikit/chart.hpp"

namespace riccikit {

// Pointwise curvature data. Index conventions, pinned by the unit-sphere
// test (R_ijkl = g_ik g_jl - g_il g_jk and R = n(n-1) on round S^n):
//   gamma(k,i,j)      = Gamma^k_ij
//   riemann(i,j,k,l)  = fully lowered Riemann tensor
//   ricci(i,k)        = g^{jl} riemann(i,j,k,l)
//   scalar            = g^{ik} ricci(i,k)
struct CurvatureBundle {
  Vec point;
  Mat g, ginv;
  Tensor3 gamma;
  Tensor4 riemann;
  Mat ricci;
  double scalar = 0.0;
};

// Conformal data at a point. bach is present only when n >= 4 and the chart
// supports order-3 derivatives (Bach is then assembled by finite differences
// of the pointwise Cotton field).
struct ConformalBundle {
  Vec point;
  Mat g, ginv;
  Mat schouten;   // A_ij = R_ij - R/(2(n-1)) g_ij
  Mat einstein;   // E_ij = R_ij - (R/2) g_ij
  Tensor4 weyl;   // W_ijkl
  Tensor3 cotton; // C_ijk = nabla_i A_jk - nabla_j A_ik
  std::optional<Mat> bach;
};

CurvatureBundle curvature_bundle(const CoordinateChart& chart, const Vec& point);
ConformalBundle conformal_bundle(const CoordinateChart& chart, const Vec& point, bool want_bach = true);

// ||C_ijk + (n-2)/(n-3) nabla_l W_ijkl||_g; an identity for every metric,
// so the return value measures numerical error only. Requires n >= 4.
double weyl_divergence_residual(const CoordinateChart& chart, const Vec& point);

// g-orthonormal frame with e_1 = v/|v| and the completion produced by
// Gram-Schmidt over the coordinate axes in fixed order, skipping
// near-degenerate candidates. Row i of the result holds the coordinate
// components of e_{i+1}.
Mat adapted_frame(const CoordinateChart& chart, const Vec& point, const Vec& v);
Mat adapted_frame(const Mat& g, const Vec& v);

// ---- building blocks shared with the soliton module ----
namespace geom {

Tensor3 christoffel(const MetricJet& j);                      // (k,i,j) -> Gamma^k_ij
Tensor4 christoffel_derivative(const MetricJet& j);           // (m,k,i,j) -> d_m Gamma^k_ij
Tensor5 christoffel_second_derivative(const MetricJet& j);    // (m,q,k,i,j) -> d_m d_q Gamma^k_ij
Tensor4 riemann_lowered(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma);
Mat ricci_from_riemann(const MetricJet& j, const Tensor4& rm);

// d_q Rm_ijkl as (q,i,j,k,l); needs order-3 jet
Tensor5 riemann_partial(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma);

struct CurvatureDerivatives {
  Tensor5 driemann;   // partial derivatives (q,i,j,k,l)
  Tensor3 cov_ricci;  // (q,i,k) -> nabla_q Ric_ik
  Vec grad_scalar;    // d_q R
  Tensor3 cov_schouten;
};
CurvatureDerivatives curvature_derivatives(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma,
                                           const Tensor4& rm, const Mat& ricci);

Tensor4 weyl_from(const MetricJet& j, const Tensor4& rm, const Mat& schouten);
Tensor3 cotton_from(const CurvatureDerivatives& d);

// Pointwise Cotton by the fallback route: central FD of the Schouten field
// plus Christoffel terms. Used for cross-checks against the exact jet route.
Tensor3 cotton_fd_of_schouten(const CoordinateChart& chart, const Vec& x);

// Bach via (a) divergence of Cotton and (b) double divergence of Weyl; both
// use finite differences of pointwise order-3 fields. Requires n >= 4.
Mat bach_div_cotton(const CoordinateChart& chart, const Vec& x);
Mat bach_div_div_weyl(const CoordinateChart& chart, const Vec& x);

// Divergence of a pointwise (0,3) field over the given slot:
// slot = 0 gives g^{sm} nabla_m T_s i j, etc. Partial derivatives come from
// central FD of the field (fd_step_high), Christoffel terms are exact.
Mat cov_divergence3_field(const CoordinateChart& chart, const Vec& x,
                          const std::function<Tensor3(const Vec&)>& field, int slot);

// g^{im} nabla_m B_ij for a symmetric (0,2) field.
Vec cov_divergence2_field(const CoordinateChart& chart, const Vec& x,
                          const std::function<Mat(const Vec&)>& field);

// nabla_l W_ijkl contracted on the last slot, exact from order-3 jets.
Tensor3 weyl_divergence_pointwise(const CoordinateChart& chart, const Vec& x);

}  // namespace geom

}  // namespace riccikit
