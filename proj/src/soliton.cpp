#include "riccikit/soliton.hpp"

namespace riccikit {

SolitonChart SolitonChart::steady(CoordinateChart chart, PotentialEval F_eval) {
  SolitonChart s;
  s.chart = std::move(chart);
  PotentialEval f;
  f.value = [F = F_eval.value](const Vec& x) { return -F(x); };
  if (F_eval.grad) f.grad = [G = F_eval.grad](const Vec& x) { return Vec(-G(x)); };
  if (F_eval.hess) f.hess = [H = F_eval.hess](const Vec& x) { return Mat(-H(x)); };
  s.f = std::move(f);
  s.rho = 0.0;
  s.steady_from_F = true;
  return s;
}

SolitonChart SolitonChart::general(CoordinateChart chart, PotentialEval f_eval, double rho) {
  SolitonChart s;
  s.chart = std::move(chart);
  s.f = std::move(f_eval);
  s.rho = rho;
  return s;
}

double SolitonChart::f_value(const Vec& x) const { return f.value(x); }

Vec SolitonChart::f_grad(const Vec& x) const {
  if (f.grad) return f.grad(x);
  const int n = chart.dim;
  Vec g(n);
  for (int k = 0; k < n; ++k)
    g[k] = fd_partial<double>(f.value, x, k, fd_axis_step(x, k, chart.fd_step));
  return g;
}

Mat SolitonChart::f_hess(const Vec& x) const {
  if (f.hess) return f.hess(x);
  const int n = chart.dim;
  Mat h(n, n);
  if (f.grad) {
    for (int k = 0; k < n; ++k) {
      const Vec d = fd_partial<Vec>(f.grad, x, k, fd_axis_step(x, k, chart.fd_step));
      for (int l = 0; l < n; ++l) h(k, l) = d[l];
    }
    return 0.5 * (h + h.transpose());
  }
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      const double d = fd_partial2<double>(f.value, x, k, l, fd_axis_step(x, k, chart.fd_step),
                                           fd_axis_step(x, l, chart.fd_step));
      h(k, l) = d;
      h(l, k) = d;
    }
  return h;
}

Mat SolitonChart::f_cov_hess(const Vec& x) const {
  const Tensor3 gamma = geom::christoffel(chart.jet(x, 2));
  const Vec df = f_grad(x);
  Mat h = f_hess(x);
  const int n = chart.dim;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double corr = 0.0;
      for (int k = 0; k < n; ++k) corr += gamma(k, a, b) * df[k];
      h(a, b) -= corr;
    }
  return h;
}

bool SolitonChart::near_critical(const Vec& x) const {
  const Mat g = chart.metric(x);
  const Vec df = f_grad(x);
  Eigen::LLT<Mat> llt(g);
  const Vec up = llt.solve(df);
  const double norm = std::sqrt(std::max(0.0, df.dot(up)));
  return norm < 1e-7 * (1.0 + std::abs(f_value(x)));
}

void SolitonChart::require_regular(const Vec& x) const {
  if (near_critical(x))
    throw GeometryError(ErrorCode::critical_point, "grad f vanishes at the queried point");
}

double soliton_residual(const SolitonChart& s, const Vec& point) {
  s.chart.require_interior(point);
  const CurvatureBundle b = curvature_bundle(s.chart, point);
  const Mat t = b.ricci + s.f_cov_hess(point) - s.rho * b.g;
  return g_norm2(t, b.ginv);
}

HamiltonReport hamilton_identities(const SolitonChart& s, const Vec& point) {
  if (s.rho != 0.0)
    throw GeometryError(ErrorCode::nonzero_rho, "Hamilton identities are stated for steady solitons only");
  s.chart.require_interior(point);
  s.chart.require_order(3, "hamilton_identities (grad R)");
  const int n = s.chart.dim;
  const MetricJet j = s.chart.jet(point, 3);
  const Tensor3 gamma = geom::christoffel(j);
  const Tensor4 dgamma = geom::christoffel_derivative(j);
  const Tensor4 rm = geom::riemann_lowered(j, gamma, dgamma);
  const Mat ric = geom::ricci_from_riemann(j, rm);
  const geom::CurvatureDerivatives d = geom::curvature_derivatives(j, gamma, dgamma, rm, ric);

  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += j.ginv(i, k) * ric(i, k);

  const Vec dF = -s.f_grad(point);  // F = -f
  const Vec dF_up = j.ginv * dF;
  const Vec v = d.grad_scalar + 2.0 * ric * dF_up;  // grad R + 2 Ric(grad F)

  HamiltonReport r;
  r.grad_residual = std::sqrt(std::max(0.0, v.dot(j.ginv * v)));
  r.energy = scal + dF.dot(dF_up);
  return r;
}

namespace {

// core shared by the public operation and the FD field evaluations, whose
// stencils may overhang the domain by O(fd_step)
Tensor3 d_tensor_unchecked(const SolitonChart& s, const Vec& point, DMethod method) {
  const int n = s.chart.dim;
  const Vec df = s.f_grad(point);

  if (method == DMethod::via_weyl) {
    const MetricJet j = s.chart.jet(point, 3);
    const Tensor3 gamma = geom::christoffel(j);
    const Tensor4 dgamma = geom::christoffel_derivative(j);
    const Tensor4 rm = geom::riemann_lowered(j, gamma, dgamma);
    const Mat ric = geom::ricci_from_riemann(j, rm);
    const double scal = (j.ginv * ric).trace();
    const Mat A = ric - (scal / (2.0 * (n - 1))) * j.g;
    const Tensor4 weyl = geom::weyl_from(j, rm, A);
    const geom::CurvatureDerivatives cd = geom::curvature_derivatives(j, gamma, dgamma, rm, ric);
    const Tensor3 cotton = geom::cotton_from(cd);
    const Vec df_up = j.ginv * df;
    Tensor3 d(n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
          double acc = cotton(i, jj, k);
          for (int l = 0; l < n; ++l) acc += weyl(i, jj, k, l) * df_up[l];
          d(i, jj, k) = acc;
        }
    return d;
  }

  const MetricJet j = s.chart.jet(point, 2);
  const Tensor3 gamma = geom::christoffel(j);
  const Tensor4 dgamma = geom::christoffel_derivative(j);
  const Tensor4 rm = geom::riemann_lowered(j, gamma, dgamma);
  const Mat ric = geom::ricci_from_riemann(j, rm);
  const double scal = (j.ginv * ric).trace();
  const Mat A = ric - (scal / (2.0 * (n - 1))) * j.g;
  const Mat E = ric - 0.5 * scal * j.g;
  const Vec w = E * (j.ginv * df);  // E_il grad^l f
  Tensor3 d(n);
  const double c1 = 1.0 / (n - 2);
  const double c2 = 1.0 / ((n - 1) * (n - 2));
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        d(i, jj, k) = c1 * (A(jj, k) * df[i] - A(i, k) * df[jj]) +
                      c2 * (j.g(jj, k) * w[i] - j.g(i, k) * w[jj]);
  return d;
}

}  // namespace

Tensor3 d_tensor(const SolitonChart& s, const Vec& point, DMethod method) {
  if (s.chart.dim < 3) throw GeometryError(ErrorCode::dimension_too_small, "D-tensor needs n >= 3");
  s.chart.require_interior(point);
  return d_tensor_unchecked(s, point, method);
}

BachConsistency bach_consistency(const SolitonChart& s, const Vec& point) {
  const int n = s.chart.dim;
  if (n < 4) throw GeometryError(ErrorCode::dimension_too_small, "Bach consistency needs n >= 4");
  s.chart.require_interior(point);
  const Mat b_dc = geom::bach_div_cotton(s.chart, point);
  const Mat b_ddw = geom::bach_div_div_weyl(s.chart, point);
  const Mat ginv = s.chart.metric_inverse(point);

  BachConsistency out;
  out.residual_routes = g_norm2(b_dc - b_ddw, ginv);

  // B_ij = -1/(n-2) (nabla_k D_ikj + (n-3)/(n-2) C_jli grad^l f)
  auto dfield = [&s](const Vec& y) { return d_tensor_unchecked(s, y, DMethod::direct); };
  const Mat divD = geom::cov_divergence3_field(s.chart, point, dfield, 1);
  const ConformalBundle cb = conformal_bundle(s.chart, point, /*want_bach=*/false);
  const Vec df_up = cb.ginv * s.f_grad(point);
  Mat b_from_d(n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      double cw = 0.0;
      for (int l = 0; l < n; ++l) cw += cb.cotton(jj, l, i) * df_up[l];
      b_from_d(i, jj) = -(divD(i, jj) + (static_cast<double>(n - 3) / (n - 2)) * cw) / (n - 2);
    }
  out.residual_from_d = g_norm2(b_dc - 0.5 * (b_from_d + b_from_d.transpose()), ginv);
  return out;
}

namespace {

double frame_weyl_norm_first_slot(const Tensor4& w, const Mat& frame, int n) {
  // sqrt(sum over i,j,k of W(e1, e_i, e_j, e_k)^2)
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        double comp = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              for (int d = 0; d < n; ++d)
                comp += frame(0, a) * frame(i, b) * frame(jj, c) * frame(k, d) * w(a, b, c, d);
        sum += comp * comp;
      }
  return std::sqrt(sum);
}

double frame_weyl_norm_1a1b(const Tensor4& w, const Mat& frame, int n) {
  double sum = 0.0;
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) {
      double comp = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int t = 0; t < n; ++t)
              comp += frame(0, p) * frame(a, q) * frame(0, r) * frame(b, t) * w(p, q, r, t);
      sum += comp * comp;
    }
  return std::sqrt(sum);
}

}  // namespace

DFlatEquivalents d_flat_equivalents(const SolitonChart& s, const Vec& point) {
  const int n = s.chart.dim;
  if (n < 4)
    throw GeometryError(ErrorCode::dimension_too_small,
                        "d_flat_equivalents needs n >= 4 (item (d) uses the Bach tensor)");
  s.chart.require_interior(point);
  s.require_regular(point);

  const ConformalBundle cb = conformal_bundle(s.chart, point, /*want_bach=*/false);
  const Vec df = s.f_grad(point);
  const Vec df_up = cb.ginv * df;
  const Mat frame = adapted_frame(cb.g, df_up);

  DFlatEquivalents r;
  r.a = g_norm3(d_tensor(s, point, DMethod::direct), cb.ginv);
  r.b = g_norm3(cb.cotton, cb.ginv) + frame_weyl_norm_first_slot(cb.weyl, frame, n);

  Mat cgrad(n, n);  // C_ijk grad^i f
  for (int jj = 0; jj < n; ++jj)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += cb.cotton(i, jj, k) * df_up[i];
      cgrad(jj, k) = acc;
    }
  const double w1a1b = frame_weyl_norm_1a1b(cb.weyl, frame, n);
  r.c = g_norm2(cgrad, cb.ginv) + w1a1b;

  auto bfield = [&s](const Vec& y) { return geom::bach_div_cotton(s.chart, y); };
  const Vec divB = geom::cov_divergence2_field(s.chart, point, bfield);
  r.d = std::abs(divB.dot(df_up)) + w1a1b;
  return r;
}

DNormIdentity d_norm_identity(const SolitonChart& s, const Vec& point) {
  const int n = s.chart.dim;
  if (n < 3) throw GeometryError(ErrorCode::dimension_too_small, "d_norm_identity needs n >= 3");
  s.chart.require_interior(point);
  s.require_regular(point);

  const CurvatureBundle b = curvature_bundle(s.chart, point);
  const double rm_norm = g_norm4(b.riemann, b.ginv);
  const double res = soliton_residual(s, point);
  if (!relatively_zero(res, 1e-4, rm_norm))
    throw GeometryError(ErrorCode::not_a_soliton,
                        "identity asserted on solitons only (residual " + std::to_string(res) + ")");

  DNormIdentity out;
  const Tensor3 d = d_tensor(s, point, DMethod::direct);
  const double dn = g_norm3(d, b.ginv);
  out.lhs = dn * dn;

  const Vec df = s.f_grad(point);
  const Vec df_up = b.ginv * df;
  const double gradnorm = std::sqrt(std::max(0.0, df.dot(df_up)));
  const Mat frame = adapted_frame(b.g, df_up);

  const Mat hess = s.f_cov_hess(point);
  Mat h(n - 1, n - 1);  // second fundamental form of {f = c}, normal e1 = grad f/|grad f|
  for (int a = 1; a < n; ++a)
    for (int bb = 1; bb < n; ++bb) {
      const Vec ea = frame.row(a);
      const Vec eb = frame.row(bb);
      h(a - 1, bb - 1) = ea.dot(hess * eb) / gradnorm;
    }
  const double H = h.trace();
  const Mat tracefree = h - (H / (n - 1)) * Mat::Identity(n - 1, n - 1);
  const double umb2 = tracefree.squaredNorm();

  // tangential |grad R|^2: needs order-3 scalar gradient
  s.chart.require_order(3, "d_norm_identity (grad R)");
  const MetricJet j = s.chart.jet(point, 3);
  const Tensor3 gamma = geom::christoffel(j);
  const Tensor4 dgamma = geom::christoffel_derivative(j);
  const Tensor4 rm = geom::riemann_lowered(j, gamma, dgamma);
  const Mat ric = geom::ricci_from_riemann(j, rm);
  const geom::CurvatureDerivatives cd = geom::curvature_derivatives(j, gamma, dgamma, rm, ric);
  double tangential_grad_r2 = 0.0;
  for (int a = 1; a < n; ++a) {
    const Vec ea = frame.row(a);
    const double da = ea.dot(cd.grad_scalar);
    tangential_grad_r2 += da * da;
  }

  const double g4 = gradnorm * gradnorm * gradnorm * gradnorm;
  out.rhs = 2.0 * g4 / ((n - 2.0) * (n - 2.0)) * umb2 +
            tangential_grad_r2 / (2.0 * (n - 1.0) * (n - 2.0));
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

SolitonPointReport point_report(const SolitonChart& s, const Vec& point, bool with_order4) {
  const int n = s.chart.dim;
  SolitonPointReport r;
  r.point = point;
  r.soliton_residual = soliton_residual(s, point);
  r.grad_f = s.f_grad(point);

  const CurvatureBundle b = curvature_bundle(s.chart, point);
  r.riemann_norm = g_norm4(b.riemann, b.ginv);

  if (s.rho == 0.0 && s.chart.max_order >= 3) r.hamilton = hamilton_identities(s, point);

  if (n >= 3) {
    r.d_direct = d_tensor(s, point, DMethod::direct);
    r.d_norm = g_norm3(r.d_direct, b.ginv);
    Tensor3 skew(n), trace_parts(n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) skew(i, jj, k) = r.d_direct(i, jj, k) + r.d_direct(jj, i, k);
    r.d_skew_residual = g_norm3(skew, b.ginv);
    // both traces g^{ij} D_ijk and g^{ik} D_ijk, reported as one vector norm
    Vec t1 = Vec::Zero(n), t2 = Vec::Zero(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          t1[k] += b.ginv(i, jj) * r.d_direct(i, jj, k);
          t2[k] += b.ginv(i, jj) * r.d_direct(i, k, jj);
        }
    r.d_trace_residual = std::sqrt(t1.dot(b.ginv * t1) + t2.dot(b.ginv * t2));

    if (s.chart.max_order >= 3) {
      r.d_via_weyl = d_tensor(s, point, DMethod::via_weyl);
      Tensor3 gap = r.d_direct - r.d_via_weyl;
      r.d_method_gap = g_norm3(gap, b.ginv);
      // (D - C) . grad f  ==  (W grad f) . grad f, zero by Weyl antisymmetry
      const ConformalBundle cb = conformal_bundle(s.chart, point, /*want_bach=*/false);
      const Vec df_up = b.ginv * r.grad_f;
      Mat contraction(n, n);
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          double acc = 0.0;
          for (int k = 0; k < n; ++k)
            acc += (r.d_direct(i, jj, k) - cb.cotton(i, jj, k)) * df_up[k];
          contraction(i, jj) = acc;
        }
      r.d_contraction_residual = g_norm2(contraction, b.ginv);
    }
  }

  if (with_order4 && n >= 4 && s.chart.max_order >= 3) {
    r.bach = bach_consistency(s, point);
    if (!s.near_critical(point)) r.dflat = d_flat_equivalents(s, point);
  }
  return r;
}

}  // namespace riccikit
