#include "riccikit/chart.hpp"

#include <Eigen/Cholesky>

namespace riccikit {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::point_outside_domain: return "point-outside-domain";
    case ErrorCode::metric_not_positive_definite: return "metric-not-positive-definite";
    case ErrorCode::insufficient_derivative_order: return "insufficient-derivative-order";
    case ErrorCode::dimension_too_small: return "dimension-too-small";
    case ErrorCode::zero_vector: return "zero-vector";
    case ErrorCode::critical_point: return "critical-point";
    case ErrorCode::not_a_soliton: return "not-a-soliton";
    case ErrorCode::nonzero_rho: return "nonzero-rho";
    case ErrorCode::nonpositive_phi: return "nonpositive-phi";
    case ErrorCode::grid_too_coarse: return "grid-too-coarse";
    case ErrorCode::missing_fiber_chart: return "missing-fiber-chart";
    case ErrorCode::no_fibration_declared: return "no-fibration-declared";
    case ErrorCode::level_not_regular: return "level-not-regular";
    case ErrorCode::normalization_nonpositive: return "normalization-nonpositive";
    case ErrorCode::phi_nonpositive_encountered: return "phi-nonpositive-encountered";
    case ErrorCode::step_failure: return "step-failure";
    case ErrorCode::tail_too_short: return "tail-too-short";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::empty_sample_set: return "empty-sample-set";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown-error";
}

namespace {

Mat checked_inverse(const Mat& g, const std::string& label) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw GeometryError(ErrorCode::metric_not_positive_definite,
                        "Cholesky factorization failed on chart '" + label + "'");
  return llt.solve(Mat::Identity(g.rows(), g.cols()));
}

}  // namespace

Mat CoordinateChart::metric_inverse(const Vec& x) const { return checked_inverse(metric(x), label); }

MetricJet CoordinateChart::jet(const Vec& x, int order) const {
  // No interiority check here: FD stencils of public operations may overhang
  // the sampling margin by O(fd_step). Public entry points validate the
  // queried point themselves.
  require_order(order, "jet");
  MetricJet j;
  j.n = dim;
  j.order = order;
  j.g = metric(x);
  if (j.g.rows() != dim || j.g.cols() != dim)
    throw GeometryError(ErrorCode::invalid_params, "metric evaluator returned wrong shape on '" + label + "'");
  // symmetry is assumed; positive definiteness is checked
  j.ginv = checked_inverse(j.g, label);
  if (order < 1) return j;

  if (dmetric) {
    j.dg = dmetric(x);
  } else {
    j.dg = Tensor3(dim);
    for (int k = 0; k < dim; ++k) {
      const Mat d = fd_partial<Mat>(metric, x, k, fd_axis_step(x, k, fd_step));
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) j.dg(k, a, b) = d(a, b);
    }
  }
  if (order < 2) return j;

  if (d2metric) {
    j.d2g = d2metric(x);
  } else {
    j.d2g = Tensor4(dim);
    if (dmetric) {
      for (int k = 0; k < dim; ++k) {
        const Tensor3 d = fd_partial<Tensor3>(dmetric, x, k, fd_axis_step(x, k, fd_step));
        for (int l = 0; l < dim; ++l)
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) j.d2g(k, l, a, b) = d(l, a, b);
      }
      // symmetrize the derivative pair to kill FD asymmetry noise
      for (int k = 0; k < dim; ++k)
        for (int l = k + 1; l < dim; ++l)
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
              const double m = 0.5 * (j.d2g(k, l, a, b) + j.d2g(l, k, a, b));
              j.d2g(k, l, a, b) = m;
              j.d2g(l, k, a, b) = m;
            }
    } else {
      for (int k = 0; k < dim; ++k)
        for (int l = k; l < dim; ++l) {
          const Mat d =
              fd_partial2<Mat>(metric, x, k, l, fd_axis_step(x, k, fd_step), fd_axis_step(x, l, fd_step));
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
              j.d2g(k, l, a, b) = d(a, b);
              j.d2g(l, k, a, b) = d(a, b);
            }
        }
    }
  }
  if (order < 3) return j;

  j.d3g = Tensor5(dim);
  if (d3metric) {
    j.d3g = d3metric(x);
  } else if (d2metric) {
    for (int k = 0; k < dim; ++k) {
      const Tensor4 d = fd_partial<Tensor4>(d2metric, x, k, fd_axis_step(x, k, fd_step_high));
      for (int l = 0; l < dim; ++l)
        for (int m = 0; m < dim; ++m)
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) j.d3g(k, l, m, a, b) = d(l, m, a, b);
    }
  } else if (dmetric) {
    for (int k = 0; k < dim; ++k)
      for (int l = k; l < dim; ++l) {
        const Tensor3 d = fd_partial2<Tensor3>(dmetric, x, k, l, fd_axis_step(x, k, fd_step_high),
                                               fd_axis_step(x, l, fd_step_high));
        for (int m = 0; m < dim; ++m)
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
              j.d3g(k, l, m, a, b) = d(m, a, b);
              j.d3g(l, k, m, a, b) = d(m, a, b);
            }
      }
  } else {
    // metric-only chart: differentiate the FD second-derivative field
    auto d2field = [&](const Vec& y) {
      Tensor4 t(dim);
      for (int k = 0; k < dim; ++k)
        for (int l = k; l < dim; ++l) {
          const Mat d =
              fd_partial2<Mat>(metric, y, k, l, fd_axis_step(y, k, fd_step), fd_axis_step(y, l, fd_step));
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
              t(k, l, a, b) = d(a, b);
              t(l, k, a, b) = d(a, b);
            }
        }
      return t;
    };
    for (int k = 0; k < dim; ++k) {
      const Tensor4 d = fd_partial<Tensor4>(d2field, x, k, fd_axis_step(x, k, fd_step_high));
      for (int l = 0; l < dim; ++l)
        for (int m = 0; m < dim; ++m)
          for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) j.d3g(k, l, m, a, b) = d(l, m, a, b);
    }
  }
  return j;
}

}  // namespace riccikit
