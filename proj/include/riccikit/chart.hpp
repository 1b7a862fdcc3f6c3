#pragma once
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "riccikit/errors.hpp"
#include "riccikit/tensor.hpp"

namespace riccikit {

// Axis-aligned coordinate box with a safety margin that keeps samplers and
// interiority checks away from coordinate-singular loci (sphere poles,
// warped-product origins, horizons).
struct Box {
  Vec lo, hi;
  double margin = 0.0;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }
  Vec sample(std::mt19937_64& rng) const {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) {
      std::uniform_real_distribution<double> u(lo[i] + margin, hi[i] - margin);
      x[i] = u(rng);
    }
    return x;
  }
};

// Pointwise derivative data of the metric. dg(k,i,j) = d_k g_ij,
// d2g(k,l,i,j) = d_k d_l g_ij, d3g(k,l,m,i,j) = d_k d_l d_m g_ij.
// Derivative slots are symmetric among themselves and (i,j) is symmetric.
struct MetricJet {
  int n = 0;
  int order = 0;
  Mat g, ginv;
  Tensor3 dg;
  Tensor4 d2g;
  Tensor5 d3g;  // filled only when order >= 3
};

// A metric on an open coordinate domain with derivative access up to a
// declared order. Immutable after construction; evaluation is pure.
//
// Derivative evaluators are optional: missing levels are filled by central
// finite differences of the deepest available analytic level, with step
// h = fd_step * (1 + |x_k|) per axis and one Richardson halving. Analytic
// evaluators, when present, must agree with that FD fallback to the FD tier
// tolerance (checked by the test suite, not at runtime).
struct CoordinateChart {
  int dim = 0;
  Box domain;
  std::function<bool(const Vec&)> predicate;  // optional refinement of the box
  std::function<Mat(const Vec&)> metric;
  std::function<Tensor3(const Vec&)> dmetric;
  std::function<Tensor4(const Vec&)> d2metric;
  std::function<Tensor5(const Vec&)> d3metric;
  int max_order = 2;  // declared trustworthy derivative order, 2..4
  double fd_step = 1e-4;
  double fd_step_high = 1e-3;  // used for third-order stencils and field FD
  std::string label;

  bool interior(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim) return false;
    if (!domain.contains(x)) return false;
    if (predicate && !predicate(x)) return false;
    return true;
  }
  void require_interior(const Vec& x) const {
    if (!interior(x))
      throw GeometryError(ErrorCode::point_outside_domain, "point not interior to chart '" + label + "'");
  }
  void require_order(int k, const std::string& who) const {
    if (max_order < k)
      throw GeometryError(ErrorCode::insufficient_derivative_order,
                          who + " needs derivative order " + std::to_string(k) + ", chart '" + label +
                              "' declares " + std::to_string(max_order));
  }

  // Metric with SPD check (Cholesky), then derivative levels up to `order`.
  MetricJet jet(const Vec& x, int order) const;

  // Inverse metric at x (SPD-checked).
  Mat metric_inverse(const Vec& x) const;
};

// ---- finite differences over point-indexed fields ----
// Used both for metric-jet fallback levels and for derivatives of computed
// tensor fields (Schouten, Weyl, Cotton, ...). One Richardson halving:
// D = (4 D(h/2) - D(h)) / 3.

template <class T, class F>
T fd_partial(const F& f, const Vec& x, int k, double h) {
  auto central = [&](double step) {
    Vec xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    T d = f(xp);
    d -= f(xm);
    d *= 1.0 / (2.0 * step);
    return d;
  };
  T coarse = central(h);
  T fine = central(0.5 * h);
  fine *= 4.0 / 3.0;
  coarse *= 1.0 / 3.0;
  fine -= coarse;
  return fine;
}

template <class T, class F>
T fd_partial2(const F& f, const Vec& x, int k, int l, double hk, double hl) {
  if (k == l) {
    auto central = [&](double step) {
      Vec xp = x, xm = x;
      xp[k] += step;
      xm[k] -= step;
      T d = f(xp);
      d += f(xm);
      T c = f(x);
      c *= 2.0;
      d -= c;
      d *= 1.0 / (step * step);
      return d;
    };
    T coarse = central(hk);
    T fine = central(0.5 * hk);
    fine *= 4.0 / 3.0;
    coarse *= 1.0 / 3.0;
    fine -= coarse;
    return fine;
  }
  auto central = [&](double sk, double sl) {
    Vec xpp = x, xpm = x, xmp = x, xmm = x;
    xpp[k] += sk; xpp[l] += sl;
    xpm[k] += sk; xpm[l] -= sl;
    xmp[k] -= sk; xmp[l] += sl;
    xmm[k] -= sk; xmm[l] -= sl;
    T d = f(xpp);
    d -= f(xpm);
    d -= f(xmp);
    d += f(xmm);
    d *= 1.0 / (4.0 * sk * sl);
    return d;
  };
  T coarse = central(hk, hl);
  T fine = central(0.5 * hk, 0.5 * hl);
  fine *= 4.0 / 3.0;
  coarse *= 1.0 / 3.0;
  fine -= coarse;
  return fine;
}

inline double fd_axis_step(const Vec& x, int k, double scale) { return scale * (1.0 + std::abs(x[k])); }

}  // namespace riccikit
