#include "riccikit/level_set.hpp"

#include <Eigen/Eigenvalues>

namespace riccikit {

std::vector<std::pair<double, int>> cluster_eigenvalues(const Vec& eigs, double rel_gap) {
  std::vector<double> v(eigs.data(), eigs.data() + eigs.size());
  std::sort(v.begin(), v.end());
  const double scale = std::max({1.0, std::abs(v.front()), std::abs(v.back())});
  std::vector<std::pair<double, int>> out;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i + 1;
    double sum = v[i];
    while (j < v.size() && std::abs(v[j] - v[j - 1]) < rel_gap * scale) sum += v[j++];
    out.emplace_back(sum / (j - i), static_cast<int>(j - i));
    i = j;
  }
  return out;
}

LevelSetReport level_diagnostics(const SolitonChart& s, const Vec& point) {
  const int n = s.chart.dim;
  s.chart.require_interior(point);
  s.require_regular(point);

  const CurvatureBundle b = curvature_bundle(s.chart, point);
  const double sign = s.steady_from_F ? -1.0 : 1.0;  // user potential is F = -f when steady
  const Vec du = sign * s.f_grad(point);
  const Vec du_up = b.ginv * du;
  const double grad_norm = std::sqrt(std::max(0.0, du.dot(du_up)));
  const Mat frame = adapted_frame(b.g, du_up);

  LevelSetReport r;
  r.point = point;
  r.unit_normal = frame.row(0);

  const Mat hess_u = sign * s.f_cov_hess(point);
  r.h = Mat(n - 1, n - 1);
  for (int a = 1; a < n; ++a)
    for (int c = 1; c < n; ++c) {
      const Vec ea = frame.row(a);
      const Vec ec = frame.row(c);
      r.h(a - 1, c - 1) = ea.dot(hess_u * ec) / grad_norm;
    }
  r.h = 0.5 * (r.h + r.h.transpose()).eval();
  r.H = r.h.trace();
  r.umbilicity_deficit = (r.h - (r.H / (n - 1)) * Mat::Identity(n - 1, n - 1)).norm();

  Mat ric_frame(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const Vec ea = frame.row(a);
      const Vec ec = frame.row(c);
      ric_frame(a, c) = ea.dot(b.ricci * ec);
    }
  r.normal_eigenvalue = ric_frame(0, 0);
  r.normal_ricci_mix = 0.0;
  for (int a = 1; a < n; ++a) r.normal_ricci_mix = std::max(r.normal_ricci_mix, std::abs(ric_frame(0, a)));

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (ric_frame + ric_frame.transpose()));
  r.ricci_eigs = cluster_eigenvalues(es.eigenvalues());
  return r;
}

ConstancyScan constancy_scan(const SolitonChart& s, double level, int samples, uint64_t seed) {
  if (!s.fibration)
    throw GeometryError(ErrorCode::no_fibration_declared,
                        "constancy_scan needs a declared fibration; general level-set tracing is unsupported");
  if (samples < 2) throw GeometryError(ErrorCode::invalid_params, "constancy_scan needs samples >= 2");
  const Fibration& fib = *s.fibration;
  if (level < fib.level_min || level > fib.level_max)
    throw GeometryError(ErrorCode::level_not_regular, "level outside the fibration range");

  std::mt19937_64 rng(seed);
  double r_min = 1e300, r_max = -1e300;
  double g_min = 1e300, g_max = -1e300;
  double h_min = 1e300, h_max = -1e300;
  for (int i = 0; i < samples; ++i) {
    const Vec theta = fib.fiber_domain.sample(rng);
    const Vec x = fib.embed(level, theta);
    if (s.near_critical(x))
      throw GeometryError(ErrorCode::level_not_regular, "grad f vanishes on the sampled slice");
    const CurvatureBundle b = curvature_bundle(s.chart, x);
    const Vec df = s.f_grad(x);
    const double grad2 = df.dot(b.ginv * df);
    const LevelSetReport rep = level_diagnostics(s, x);
    r_min = std::min(r_min, b.scalar);
    r_max = std::max(r_max, b.scalar);
    g_min = std::min(g_min, grad2);
    g_max = std::max(g_max, grad2);
    h_min = std::min(h_min, rep.H);
    h_max = std::max(h_max, rep.H);
  }
  ConstancyScan out;
  out.spread_scalar = r_max - r_min;
  out.spread_grad2 = g_max - g_min;
  out.spread_mean_curvature = h_max - h_min;
  return out;
}

}  // namespace riccikit
