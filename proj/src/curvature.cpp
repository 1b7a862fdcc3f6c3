#include "riccikit/curvature.hpp"

namespace riccikit {
namespace geom {

Tensor3 christoffel(const MetricJet& j) {
  const int n = j.n;
  Tensor3 low(n);  // Gamma_{l,ij} = (d_i g_jl + d_j g_il - d_l g_ij)/2
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        low(l, i, jj) = 0.5 * (j.dg(i, jj, l) + j.dg(jj, i, l) - j.dg(l, i, jj));
  Tensor3 g(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += j.ginv(k, l) * low(l, i, jj);
        g(k, i, jj) = acc;
      }
  return g;
}

namespace {

// d_m g^{kl} = -g^{ka} dg(m,a,b) g^{bl}
Tensor3 dginv(const MetricJet& j) {
  const int n = j.n;
  Tensor3 t(n);
  for (int m = 0; m < n; ++m) {
    Mat d(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) d(a, b) = j.dg(m, a, b);
    const Mat r = -j.ginv * d * j.ginv;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) t(m, k, l) = r(k, l);
  }
  return t;
}

}  // namespace

Tensor4 christoffel_derivative(const MetricJet& j) {
  const int n = j.n;
  const Tensor3 dgi = dginv(j);
  Tensor3 low(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        low(l, i, jj) = 0.5 * (j.dg(i, jj, l) + j.dg(jj, i, l) - j.dg(l, i, jj));
  Tensor4 out(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) {
            const double dlow =
                0.5 * (j.d2g(m, i, jj, l) + j.d2g(m, jj, i, l) - j.d2g(m, l, i, jj));
            acc += dgi(m, k, l) * low(l, i, jj) + j.ginv(k, l) * dlow;
          }
          out(m, k, i, jj) = acc;
        }
  return out;
}

Tensor5 christoffel_second_derivative(const MetricJet& j) {
  if (j.order < 3)
    throw GeometryError(ErrorCode::insufficient_derivative_order, "second Christoffel derivative needs order 3");
  const int n = j.n;
  const Tensor3 dgi = dginv(j);
  Tensor3 low(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        low(l, i, jj) = 0.5 * (j.dg(i, jj, l) + j.dg(jj, i, l) - j.dg(l, i, jj));
  // d_m d_q g^{kl}
  Tensor4 d2gi(n);
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q) {
      Mat dq(n, n), dm(n, n), d2(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          dq(a, b) = j.dg(q, a, b);
          dm(a, b) = j.dg(m, a, b);
          d2(a, b) = j.d2g(m, q, a, b);
        }
      Mat dgi_m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) dgi_m(a, b) = dgi(m, a, b);
      const Mat r = -(dgi_m * dq * j.ginv + j.ginv * d2 * j.ginv + j.ginv * dq * dgi_m.transpose());
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) d2gi(m, q, k, l) = r(k, l);
    }
  Tensor5 out(n);
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l) {
              const double dlow_q =
                  0.5 * (j.d2g(q, i, jj, l) + j.d2g(q, jj, i, l) - j.d2g(q, l, i, jj));
              const double dlow_m =
                  0.5 * (j.d2g(m, i, jj, l) + j.d2g(m, jj, i, l) - j.d2g(m, l, i, jj));
              const double d2low =
                  0.5 * (j.d3g(m, q, i, jj, l) + j.d3g(m, q, jj, i, l) - j.d3g(m, q, l, i, jj));
              acc += d2gi(m, q, k, l) * low(l, i, jj) + dgi(q, k, l) * dlow_m + dgi(m, k, l) * dlow_q +
                     j.ginv(k, l) * d2low;
            }
            out(m, q, k, i, jj) = acc;
          }
  return out;
}

namespace {

// [R(e_k, e_l) e_j]^m
inline double riemann_up(const Tensor3& G, const Tensor4& dG, int n, int m, int k, int l, int jj) {
  double acc = dG(k, m, l, jj) - dG(l, m, k, jj);
  for (int p = 0; p < n; ++p) acc += G(m, k, p) * G(p, l, jj) - G(m, l, p) * G(p, k, jj);
  return acc;
}

}  // namespace

Tensor4 riemann_lowered(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma) {
  const int n = j.n;
  // Rm(i,j,k,l) = g(R(e_k,e_l) e_j, e_i): round unit sphere then satisfies
  // Rm = g_ik g_jl - g_il g_jk with positive scalar curvature n(n-1).
  Tensor4 rm(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int jj = 0; jj < n; ++jj) {
        for (int i = 0; i < n; ++i) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += j.g(i, m) * riemann_up(gamma, dgamma, n, m, k, l, jj);
          rm(i, jj, k, l) = acc;
        }
      }
  return rm;
}

Mat ricci_from_riemann(const MetricJet& j, const Tensor4& rm) {
  const int n = j.n;
  Mat ric = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int jj = 0; jj < n; ++jj)
        for (int l = 0; l < n; ++l) acc += j.ginv(jj, l) * rm(i, jj, k, l);
      ric(i, k) = acc;
    }
  return 0.5 * (ric + ric.transpose());
}

Tensor5 riemann_partial(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma) {
  const int n = j.n;
  const Tensor5 d2gamma = christoffel_second_derivative(j);
  Tensor5 out(n);
  for (int q = 0; q < n; ++q)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int jj = 0; jj < n; ++jj) {
          for (int m = 0; m < n; ++m) {
            // d_q of [R(e_k,e_l)e_j]^m
            double dup = d2gamma(q, k, m, l, jj) - d2gamma(q, l, m, k, jj);
            for (int p = 0; p < n; ++p)
              dup += dgamma(q, m, k, p) * gamma(p, l, jj) + gamma(m, k, p) * dgamma(q, p, l, jj) -
                     dgamma(q, m, l, p) * gamma(p, k, jj) - gamma(m, l, p) * dgamma(q, p, k, jj);
            for (int i = 0; i < n; ++i) {
              out(q, i, jj, k, l) += j.dg(q, i, m) * riemann_up(gamma, dgamma, n, m, k, l, jj) + j.g(i, m) * dup;
            }
          }
        }
  return out;
}

CurvatureDerivatives curvature_derivatives(const MetricJet& j, const Tensor3& gamma, const Tensor4& dgamma,
                                           const Tensor4& rm, const Mat& ricci) {
  const int n = j.n;
  CurvatureDerivatives out;
  out.driemann = riemann_partial(j, gamma, dgamma);
  const Tensor3 dgi = dginv(j);

  // partial Ricci: d_q Ric_ik = d_q g^{jl} Rm_ijkl + g^{jl} d_q Rm_ijkl
  Tensor3 dric(n);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int jj = 0; jj < n; ++jj)
          for (int l = 0; l < n; ++l)
            acc += dgi(q, jj, l) * rm(i, jj, k, l) + j.ginv(jj, l) * out.driemann(q, i, jj, k, l);
        dric(q, i, k) = acc;
      }

  out.grad_scalar = Vec::Zero(n);
  for (int q = 0; q < n; ++q) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) acc += dgi(q, i, k) * ricci(i, k) + j.ginv(i, k) * dric(q, i, k);
    out.grad_scalar[q] = acc;
  }

  out.cov_ricci = Tensor3(n);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double acc = dric(q, i, k);
        for (int p = 0; p < n; ++p) acc -= gamma(p, q, i) * ricci(p, k) + gamma(p, q, k) * ricci(i, p);
        out.cov_ricci(q, i, k) = acc;
      }

  out.cov_schouten = Tensor3(n);
  const double c = 1.0 / (2.0 * (n - 1));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        out.cov_schouten(q, i, k) = out.cov_ricci(q, i, k) - c * out.grad_scalar[q] * j.g(i, k);
  return out;
}

Tensor4 weyl_from(const MetricJet& j, const Tensor4& rm, const Mat& schouten) {
  const int n = j.n;
  if (n < 3) throw GeometryError(ErrorCode::dimension_too_small, "Weyl needs n >= 3");
  Tensor4 w(n);
  const double c = 1.0 / (n - 2);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w(i, jj, k, l) = rm(i, jj, k, l) -
                           c * (j.g(i, k) * schouten(jj, l) - j.g(i, l) * schouten(jj, k) -
                                j.g(jj, k) * schouten(i, l) + j.g(jj, l) * schouten(i, k));
  return w;
}

Tensor3 cotton_from(const CurvatureDerivatives& d) {
  const int n = d.cov_schouten.dim();
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) c(i, jj, k) = d.cov_schouten(i, jj, k) - d.cov_schouten(jj, i, k);
  return c;
}

namespace {

Mat schouten_at(const CoordinateChart& chart, const Vec& x) {
  const MetricJet j = chart.jet(x, 2);
  const Tensor3 gamma = christoffel(j);
  const Tensor4 dgamma = christoffel_derivative(j);
  const Tensor4 rm = riemann_lowered(j, gamma, dgamma);
  const Mat ric = ricci_from_riemann(j, rm);
  double scal = 0.0;
  for (int i = 0; i < j.n; ++i)
    for (int k = 0; k < j.n; ++k) scal += j.ginv(i, k) * ric(i, k);
  return ric - (scal / (2.0 * (j.n - 1))) * j.g;
}

Tensor3 cotton_at(const CoordinateChart& chart, const Vec& x) {
  const MetricJet j = chart.jet(x, 3);
  const Tensor3 gamma = christoffel(j);
  const Tensor4 dgamma = christoffel_derivative(j);
  const Tensor4 rm = riemann_lowered(j, gamma, dgamma);
  const Mat ric = ricci_from_riemann(j, rm);
  const CurvatureDerivatives d = curvature_derivatives(j, gamma, dgamma, rm, ric);
  return cotton_from(d);
}

}  // namespace

Tensor3 cotton_fd_of_schouten(const CoordinateChart& chart, const Vec& x) {
  const int n = chart.dim;
  const Tensor3 gamma = christoffel(chart.jet(x, 2));
  auto field = [&chart](const Vec& y) { return schouten_at(chart, y); };
  Tensor3 dA(n);  // (q,i,k) = d_q A_ik
  for (int q = 0; q < n; ++q) {
    const Mat d = fd_partial<Mat>(field, x, q, fd_axis_step(x, q, chart.fd_step_high));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) dA(q, i, k) = d(i, k);
  }
  const Mat A = schouten_at(chart, x);
  Tensor3 covA(n);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double acc = dA(q, i, k);
        for (int p = 0; p < n; ++p) acc -= gamma(p, q, i) * A(p, k) + gamma(p, q, k) * A(i, p);
        covA(q, i, k) = acc;
      }
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) c(i, jj, k) = covA(i, jj, k) - covA(jj, i, k);
  return c;
}

Mat cov_divergence3_field(const CoordinateChart& chart, const Vec& x,
                          const std::function<Tensor3(const Vec&)>& field, int slot) {
  const int n = chart.dim;
  const MetricJet j = chart.jet(x, 2);
  const Tensor3 gamma = christoffel(j);
  const Tensor3 t0 = field(x);
  // dT(m, a,b,c): partial derivatives of the field
  std::vector<Tensor3> dT(n, Tensor3(n));
  for (int m = 0; m < n; ++m) dT[m] = fd_partial<Tensor3>(field, x, m, fd_axis_step(x, m, chart.fd_step_high));

  Mat out = Mat::Zero(n, n);  // remaining two slots, in order
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m)
        for (int s = 0; s < n; ++s) {
          int idx[3];
          int pos = 0;
          for (int sl = 0; sl < 3; ++sl) {
            if (sl == slot)
              idx[sl] = s;
            else
              idx[sl] = (pos++ == 0) ? a : b;
          }
          // nabla_m T_{idx} = d_m T_{idx} - sum over slots of Gamma^p_{m,idx_sl} T_{...p...}
          double cov = dT[m](idx[0], idx[1], idx[2]);
          for (int sl = 0; sl < 3; ++sl)
            for (int p = 0; p < n; ++p) {
              int jdx[3] = {idx[0], idx[1], idx[2]};
              jdx[sl] = p;
              cov -= gamma(p, m, idx[sl]) * t0(jdx[0], jdx[1], jdx[2]);
            }
          acc += j.ginv(s, m) * cov;
        }
      out(a, b) = acc;
    }
  return out;
}

Vec cov_divergence2_field(const CoordinateChart& chart, const Vec& x,
                          const std::function<Mat(const Vec&)>& field) {
  const int n = chart.dim;
  const MetricJet j = chart.jet(x, 2);
  const Tensor3 gamma = christoffel(j);
  const Mat t0 = field(x);
  std::vector<Mat> dT(n);
  for (int m = 0; m < n; ++m) dT[m] = fd_partial<Mat>(field, x, m, fd_axis_step(x, m, chart.fd_step_high));
  Vec out = Vec::Zero(n);
  for (int b = 0; b < n; ++b) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a) {
        double cov = dT[m](a, b);
        for (int p = 0; p < n; ++p) cov -= gamma(p, m, a) * t0(p, b) + gamma(p, m, b) * t0(a, p);
        acc += j.ginv(a, m) * cov;
      }
    out[b] = acc;
  }
  return out;
}

Tensor3 weyl_divergence_pointwise(const CoordinateChart& chart, const Vec& x) {
  const int n = chart.dim;
  const MetricJet j = chart.jet(x, 3);
  const Tensor3 gamma = christoffel(j);
  const Tensor4 dgamma = christoffel_derivative(j);
  const Tensor4 rm = riemann_lowered(j, gamma, dgamma);
  const Mat ric = ricci_from_riemann(j, rm);
  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += j.ginv(i, k) * ric(i, k);
  const Mat A = ric - (scal / (2.0 * (n - 1))) * j.g;
  const CurvatureDerivatives d = curvature_derivatives(j, gamma, dgamma, rm, ric);

  // nabla_q W_ijkl = nabla_q Rm_ijkl - (g wedge nabla_q A)/(n-2)
  Tensor3 div(n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int q = 0; q < n; ++q)
          for (int l = 0; l < n; ++l) {
            double covRm = d.driemann(q, i, jj, k, l);
            for (int p = 0; p < n; ++p)
              covRm -= gamma(p, q, i) * rm(p, jj, k, l) + gamma(p, q, jj) * rm(i, p, k, l) +
                       gamma(p, q, k) * rm(i, jj, p, l) + gamma(p, q, l) * rm(i, jj, k, p);
            const double covW =
                covRm - (1.0 / (n - 2)) * (j.g(i, k) * d.cov_schouten(q, jj, l) -
                                           j.g(i, l) * d.cov_schouten(q, jj, k) -
                                           j.g(jj, k) * d.cov_schouten(q, i, l) +
                                           j.g(jj, l) * d.cov_schouten(q, i, k));
            acc += j.ginv(q, l) * covW;
          }
        div(i, jj, k) = acc;
      }
  return div;
}

Mat bach_div_cotton(const CoordinateChart& chart, const Vec& x) {
  const int n = chart.dim;
  if (n < 4) throw GeometryError(ErrorCode::dimension_too_small, "Bach needs n >= 4");
  chart.require_order(3, "bach (FD of Cotton)");
  auto cfield = [&chart](const Vec& y) { return cotton_at(chart, y); };
  const Mat divC = cov_divergence3_field(chart, x, cfield, 0);  // g^{km} nabla_m C_kij

  const MetricJet j = chart.jet(x, 2);
  const Tensor3 gamma = christoffel(j);
  const Tensor4 dgamma = christoffel_derivative(j);
  const Tensor4 rm = riemann_lowered(j, gamma, dgamma);
  const Mat ric = ricci_from_riemann(j, rm);
  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += j.ginv(i, k) * ric(i, k);
  const Mat A = ric - (scal / (2.0 * (n - 1))) * j.g;
  const Tensor4 w = weyl_from(j, rm, A);

  Mat b = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      double rw = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) rw += ric(k, l) * j.ginv(k, a) * j.ginv(l, bb) * w(i, a, jj, bb);
      b(i, jj) = (divC(i, jj) + rw) / (n - 2);
    }
  return 0.5 * (b + b.transpose());
}

Mat bach_div_div_weyl(const CoordinateChart& chart, const Vec& x) {
  const int n = chart.dim;
  if (n < 4) throw GeometryError(ErrorCode::dimension_too_small, "Bach needs n >= 4");
  chart.require_order(3, "bach (div div Weyl)");
  // V_ikj = nabla^l W_ikjl pointwise, then g^{km} nabla_m V_ikj.
  auto vfield = [&chart](const Vec& y) { return weyl_divergence_pointwise(chart, y); };
  const Mat ddw = cov_divergence3_field(chart, x, vfield, 1);  // contract slot k

  const MetricJet j = chart.jet(x, 2);
  const Tensor3 gamma = christoffel(j);
  const Tensor4 dgamma = christoffel_derivative(j);
  const Tensor4 rm = riemann_lowered(j, gamma, dgamma);
  const Mat ric = ricci_from_riemann(j, rm);
  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += j.ginv(i, k) * ric(i, k);
  const Mat A = ric - (scal / (2.0 * (n - 1))) * j.g;
  const Tensor4 w = weyl_from(j, rm, A);

  Mat b = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      double rw = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) rw += ric(k, l) * j.ginv(k, a) * j.ginv(l, bb) * w(i, a, jj, bb);
      b(i, jj) = ddw(i, jj) / (n - 3) + rw / (n - 2);
    }
  return 0.5 * (b + b.transpose());
}

}  // namespace geom

CurvatureBundle curvature_bundle(const CoordinateChart& chart, const Vec& point) {
  chart.require_interior(point);
  chart.require_order(2, "curvature_bundle");
  const MetricJet j = chart.jet(point, 2);
  CurvatureBundle b;
  b.point = point;
  b.g = j.g;
  b.ginv = j.ginv;
  b.gamma = geom::christoffel(j);
  const Tensor4 dgamma = geom::christoffel_derivative(j);
  b.riemann = geom::riemann_lowered(j, b.gamma, dgamma);
  b.ricci = geom::ricci_from_riemann(j, b.riemann);
  b.scalar = 0.0;
  for (int i = 0; i < j.n; ++i)
    for (int k = 0; k < j.n; ++k) b.scalar += j.ginv(i, k) * b.ricci(i, k);
  return b;
}

ConformalBundle conformal_bundle(const CoordinateChart& chart, const Vec& point, bool want_bach) {
  const int n = chart.dim;
  if (n < 3) throw GeometryError(ErrorCode::dimension_too_small, "conformal_bundle needs n >= 3");
  chart.require_interior(point);
  chart.require_order(3, "conformal_bundle (Cotton)");
  const MetricJet j = chart.jet(point, 3);
  const Tensor3 gamma = geom::christoffel(j);
  const Tensor4 dgamma = geom::christoffel_derivative(j);
  const Tensor4 rm = geom::riemann_lowered(j, gamma, dgamma);
  const Mat ric = geom::ricci_from_riemann(j, rm);
  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += j.ginv(i, k) * ric(i, k);

  ConformalBundle b;
  b.point = point;
  b.g = j.g;
  b.ginv = j.ginv;
  b.schouten = ric - (scal / (2.0 * (n - 1))) * j.g;
  b.einstein = ric - 0.5 * scal * j.g;
  b.weyl = geom::weyl_from(j, rm, b.schouten);
  const geom::CurvatureDerivatives d = geom::curvature_derivatives(j, gamma, dgamma, rm, ric);
  b.cotton = geom::cotton_from(d);
  if (want_bach && n >= 4) b.bach = geom::bach_div_cotton(chart, point);
  return b;
}

double weyl_divergence_residual(const CoordinateChart& chart, const Vec& point) {
  const int n = chart.dim;
  if (n < 4) throw GeometryError(ErrorCode::dimension_too_small, "weyl divergence identity needs n >= 4");
  chart.require_interior(point);
  chart.require_order(3, "weyl_divergence_residual");
  const Tensor3 div = geom::weyl_divergence_pointwise(chart, point);
  const ConformalBundle cb = conformal_bundle(chart, point, /*want_bach=*/false);
  Tensor3 res(n);
  const double c = static_cast<double>(n - 2) / (n - 3);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) res(i, jj, k) = cb.cotton(i, jj, k) + c * div(i, jj, k);
  return g_norm3(res, cb.ginv);
}

Mat adapted_frame(const Mat& g, const Vec& v) {
  const int n = static_cast<int>(g.rows());
  const double vnorm = g_norm_vec(v, g);
  if (!(vnorm > 0.0)) throw GeometryError(ErrorCode::zero_vector, "adapted_frame needs a nonzero vector");
  Mat frame(n, n);
  frame.row(0) = v / vnorm;
  int have = 1;
  for (int axis = 0; axis < n && have < n; ++axis) {
    Vec w = Vec::Zero(n);
    w[axis] = 1.0;
    const double axis_norm = g_norm_vec(w, g);
    for (int i = 0; i < have; ++i) {
      const Vec e = frame.row(i);
      w -= e.dot(g * w) * e;
    }
    const double wn = g_norm_vec(w, g);
    if (wn < 1e-8 * axis_norm) continue;  // near-degenerate candidate, skip
    frame.row(have++) = w / wn;
  }
  if (have < n) throw GeometryError(ErrorCode::invalid_params, "frame completion failed");
  return frame;
}

Mat adapted_frame(const CoordinateChart& chart, const Vec& point, const Vec& v) {
  chart.require_interior(point);
  const MetricJet j = chart.jet(point, 0);
  return adapted_frame(j.g, v);
}

}  // namespace riccikit
