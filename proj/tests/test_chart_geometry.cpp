#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riccikit/curvature.hpp"
#include "test_support.hpp"

using namespace riccikit;
using namespace testsup;

namespace {

// Independent conformal oracle for the cigar: g = e^{2u} delta in dimension
// two has R = -2 e^{-2u} Laplace(u). The Laplacian is taken by plain second
// differences of u, never touching the curvature stack under test.
double cigar_scalar_oracle(const Vec& x) {
  auto u = [](const Vec& y) { return -0.5 * std::log(1.0 + y.squaredNorm()); };
  const double h = 1e-3;  // second differences: balance truncation vs roundoff
  double lap = 0.0;
  for (int k = 0; k < 2; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    lap += (u(xp) - 2.0 * u(x) + u(xm)) / (h * h);
  }
  return -2.0 * std::exp(-2.0 * u(x)) * lap;
}

void check_curvature_invariants(const CoordinateChart& c, const Vec& x, double tol) {
  const CurvatureBundle b = curvature_bundle(c, x);
  const int n = c.dim;
  const double scale = 1.0 + b.riemann.max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = b.riemann(i, j, k, l);
          CHECK(std::abs(r + b.riemann(j, i, k, l)) < tol * scale);
          CHECK(std::abs(r + b.riemann(i, j, l, k)) < tol * scale);
          CHECK(std::abs(r - b.riemann(k, l, i, j)) < tol * scale);
          const double bianchi = r + b.riemann(j, k, i, l) + b.riemann(k, i, j, l);
          CHECK(std::abs(bianchi) < tol * scale);
        }
  // trace consistency
  Mat ric = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) ric(i, k) += b.ginv(j, l) * b.riemann(i, j, k, l);
  CHECK((ric - b.ricci).norm() < tol * scale);
  double scal = (b.ginv * b.ricci).trace();
  CHECK(std::abs(scal - b.scalar) < tol * (1.0 + std::abs(b.scalar)));
}

void check_conformal_invariants(const CoordinateChart& c, const Vec& x, double tol, bool with_bach) {
  const int n = c.dim;
  const ConformalBundle cb = conformal_bundle(c, x, with_bach);
  const double scale = 1.0 + cb.weyl.max_abs();
  // Weyl totally trace-free: contract every index pair with ginv
  for (int a = 0; a < n; ++a)
    for (int b2 = 0; b2 < n; ++b2) {
      double t12 = 0, t13 = 0, t14 = 0, t23 = 0, t24 = 0, t34 = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          t12 += cb.ginv(i, j) * cb.weyl(i, j, a, b2);
          t13 += cb.ginv(i, j) * cb.weyl(i, a, j, b2);
          t14 += cb.ginv(i, j) * cb.weyl(i, a, b2, j);
          t23 += cb.ginv(i, j) * cb.weyl(a, i, j, b2);
          t24 += cb.ginv(i, j) * cb.weyl(a, i, b2, j);
          t34 += cb.ginv(i, j) * cb.weyl(a, b2, i, j);
        }
      for (double t : {t12, t13, t14, t23, t24, t34}) CHECK(std::abs(t) < tol * scale);
    }
  // Cotton skew + trace-free
  const double cscale = 1.0 + cb.cotton.max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        CHECK(std::abs(cb.cotton(i, j, k) + cb.cotton(j, i, k)) < tol * cscale);
  for (int k = 0; k < n; ++k) {
    double tr1 = 0, tr2 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        tr1 += cb.ginv(i, j) * cb.cotton(i, j, k);
        tr2 += cb.ginv(i, j) * cb.cotton(i, k, j);
      }
    CHECK(std::abs(tr1) < tol * cscale);
    CHECK(std::abs(tr2) < tol * cscale);
  }
  CHECK((cb.schouten - cb.schouten.transpose()).norm() < tol);
  CHECK((cb.einstein - cb.einstein.transpose()).norm() < tol);
  if (cb.bach) CHECK((*cb.bach - cb.bach->transpose()).norm() < tol);
}

}  // namespace

TEST_CASE("flat space: curvature vanishes") {
  const CoordinateChart c = catalog::flat_chart(3);
  Vec x(3);
  x << 0.3, -1.2, 2.0;
  const CurvatureBundle b = curvature_bundle(c, x);
  CHECK(b.riemann.max_abs() < 1e-14);
  CHECK(b.ricci.norm() < 1e-14);
  CHECK(std::abs(b.scalar) < 1e-14);
}

TEST_CASE("sphere pinning: R = n(n-1) and Rm = g^2 wedge on unit spheres") {
  for (int n = 2; n <= 5; ++n) {
    const CoordinateChart c = catalog::sphere_chart(n, 1.0);
    for (const Vec& x : sample_points(c, 20, 7 + n)) {
      const CurvatureBundle b = curvature_bundle(c, x);
      CHECK(std::abs(b.scalar - n * (n - 1)) < 1e-6);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double want = b.g(i, k) * b.g(j, l) - b.g(i, l) * b.g(j, k);
              CHECK(std::abs(b.riemann(i, j, k, l) - want) < 1e-8 * (1.0 + std::abs(want)));
            }
    }
  }
  // unit S^2 at the equator, polar chart
  const CoordinateChart s2 = catalog::sphere_chart(2, 1.0);
  Vec eq(2);
  eq << M_PI / 2.0, 1.0;
  CHECK(curvature_bundle(s2, eq).scalar == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("cigar scalar curvature against the conformal oracle") {
  const CoordinateChart c = catalog::cigar_chart();
  Vec origin = Vec::Zero(2);
  CHECK(curvature_bundle(c, origin).scalar == doctest::Approx(4.0).epsilon(1e-9));
  for (const Vec& x : sample_points(c, 25, 11)) {
    const double oracle = cigar_scalar_oracle(x);
    CHECK(curvature_bundle(c, x).scalar == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("conformal bundle on flat R^4 vanishes") {
  const CoordinateChart c = catalog::flat_chart(4);
  Vec x(4);
  x << 0.1, 0.2, -0.4, 1.0;
  const ConformalBundle cb = conformal_bundle(c, x);
  CHECK(cb.schouten.norm() < 1e-13);
  CHECK(cb.einstein.norm() < 1e-13);
  CHECK(cb.weyl.max_abs() < 1e-13);
  CHECK(cb.cotton.max_abs() < 1e-12);
  REQUIRE(cb.bach.has_value());
  CHECK(cb.bach->norm() < 1e-10);
}

TEST_CASE("round S^4: Schouten equals the metric") {
  // R = 12 on unit S^4, so A = R (n-2)/(2 n (n-1)) g = g
  const CoordinateChart c = catalog::sphere_chart(4, 1.0);
  for (const Vec& x : sample_points(c, 5, 3)) {
    const ConformalBundle cb = conformal_bundle(c, x, false);
    CHECK((cb.schouten - cb.g).norm() < 1e-8 * cb.g.norm());
    CHECK(cb.weyl.max_abs() < 1e-8);
    CHECK(cb.cotton.max_abs() < 1e-8);
  }
}

TEST_CASE("Euclidean Schwarzschild: Ricci-flat, Cotton and Bach vanish, Weyl does not") {
  const CoordinateChart c = catalog::schwarzschild_chart(1.0);
  for (const Vec& x : sample_points(c, 6, 5)) {
    const CurvatureBundle b = curvature_bundle(c, x);
    CHECK(g_norm2(b.ricci, b.ginv) < 1e-9);
    const ConformalBundle cb = conformal_bundle(c, x);
    CHECK(g_norm4(cb.weyl, cb.ginv) > 1e-3);
    CHECK(g_norm3(cb.cotton, cb.ginv) < 1e-8);
    REQUIRE(cb.bach.has_value());
    CHECK(g_norm2(*cb.bach, cb.ginv) < 1e-6);
  }
}

TEST_CASE("Weyl vanishes identically in dimension three") {
  const CoordinateChart c = catalog::conformal_torus_chart(3, 0.4);
  for (const Vec& x : sample_points(c, 10, 19)) {
    const ConformalBundle cb = conformal_bundle(c, x, false);
    CHECK(cb.weyl.max_abs() < 1e-10 * (1.0 + cb.schouten.norm()));
  }
}

TEST_CASE("weyl divergence identity") {
  SUBCASE("flat R^5 gives zero") {
    const CoordinateChart c = catalog::flat_chart(5);
    Vec x = Vec::Constant(5, 0.7);
    CHECK(weyl_divergence_residual(c, x) < 1e-10);
  }
  SUBCASE("Euclidean Schwarzschild at rho = 4") {
    const CoordinateChart c = catalog::schwarzschild_chart(1.0);
    Vec x(4);
    x << 0.7, 4.0, 1.3, 1.1;
    CHECK(weyl_divergence_residual(c, x) < 1e-4);
  }
  SUBCASE("random points on n >= 4 charts") {
    for (const auto& c : {catalog::schwarzschild_chart(1.0), catalog::conformal_torus_chart(4, 0.4),
                          catalog::make("warped_control_non_einstein_fiber").soliton.chart}) {
      for (const Vec& x : sample_points(c, 5, 23)) CHECK(weyl_divergence_residual(c, x) < 1e-4);
    }
  }
}

TEST_CASE("exact Cotton route agrees with FD-of-Schouten fallback") {
  for (const auto& c : {catalog::schwarzschild_chart(1.0), catalog::sphere_chart(3, 2.0),
                        catalog::conformal_torus_chart(4, 0.3)}) {
    for (const Vec& x : sample_points(c, 4, 31)) {
      const ConformalBundle cb = conformal_bundle(c, x, false);
      const Tensor3 fd = geom::cotton_fd_of_schouten(c, x);
      CHECK(max_entry_gap3(cb.cotton, fd) < 1e-6 * (1.0 + cb.cotton.max_abs()));
    }
  }
}

TEST_CASE("curvature and conformal invariants at random interior points") {
  const std::vector<CoordinateChart> charts = {
      catalog::flat_chart(3),          catalog::sphere_chart(2, 1.0),  catalog::sphere_chart(3, 1.5),
      catalog::sphere_chart(5, 1.0),   catalog::cigar_chart(),         catalog::schwarzschild_chart(1.0),
      catalog::conformal_torus_chart(4, 0.4)};
  for (const auto& c : charts) {
    int i = 0;
    for (const Vec& x : sample_points(c, 25, 101 + c.dim)) {
      check_curvature_invariants(c, x, 1e-9);
      if (c.dim >= 3) check_conformal_invariants(c, x, 1e-8, /*with_bach=*/c.dim >= 4 && (i % 8 == 0));
      ++i;
    }
  }
}

TEST_CASE("order-3 quantities from a metric-only chart stay within the FD tier") {
  // strip every analytic evaluator: d3g comes from differencing the FD
  // second-derivative field
  const CoordinateChart fd = fd_backend(catalog::schwarzschild_chart(1.0));
  Vec x(4);
  x << 0.7, 4.0, 1.3, 1.1;
  const ConformalBundle cb = conformal_bundle(fd, x, true);
  CHECK(g_norm3(cb.cotton, cb.ginv) < 1e-5);   // exactly zero on this chart
  REQUIRE(cb.bach.has_value());
  CHECK(g_norm2(*cb.bach, cb.ginv) < 1e-3);
  CHECK(weyl_divergence_residual(fd, x) < 1e-4);
}

TEST_CASE("generic random metrics satisfy every structural identity") {
  // anisotropic trigonometric perturbations of flat space: no special
  // structure, so these exercise the full recurrence stack
  std::mt19937_64 rng(2718);
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 2; ++trial) {
      const CoordinateChart c = random_trig_chart(n, rng);
      for (const Vec& x : sample_points(c, 4, 53 + trial)) {
        check_curvature_invariants(c, x, 1e-9);
        check_conformal_invariants(c, x, 1e-8, /*with_bach=*/false);
        if (n >= 4) {
          CHECK(weyl_divergence_residual(c, x) < 1e-8);
          // the two Bach assembly routes agree on any metric
          const Mat ginv = c.metric_inverse(x);
          const Mat gap = geom::bach_div_cotton(c, x) - geom::bach_div_div_weyl(c, x);
          CHECK(g_norm2(gap, ginv) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("FD backend reproduces analytic bundles") {
  for (const auto& c : {catalog::cigar_chart(), catalog::schwarzschild_chart(1.0),
                        catalog::sphere_chart(3, 1.0)}) {
    const CoordinateChart fd = fd_backend(c);
    for (const Vec& x : sample_points(c, 6, 41)) {
      const CurvatureBundle a = curvature_bundle(c, x);
      const CurvatureBundle b = curvature_bundle(fd, x);
      CHECK(max_entry_gap4(a.riemann, b.riemann) < 1e-5);
      CHECK((a.ricci - b.ricci).cwiseAbs().maxCoeff() < 1e-5);
      CHECK(std::abs(a.scalar - b.scalar) < 1e-5);
      CHECK(max_entry_gap3(a.gamma, b.gamma) < 1e-5);
    }
  }
}

TEST_CASE("adapted frames") {
  SUBCASE("flat R^3 axis vector reproduces the coordinate frame") {
    const CoordinateChart c = catalog::flat_chart(3);
    Vec v(3);
    v << 2.0, 0.0, 0.0;
    const Mat f = adapted_frame(c, Vec::Zero(3), v);
    CHECK((f - Mat::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("flat R^2 diagonal vector") {
    const CoordinateChart c = catalog::flat_chart(2);
    Vec v(2);
    v << 1.0, 1.0;
    const Mat f = adapted_frame(c, Vec::Zero(2), v);
    CHECK(std::abs(f(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(f(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(std::abs(f(1, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(f.row(0).dot(f.row(1)) < 1e-12);
  }
  SUBCASE("cigar frame is g-orthonormal") {
    const CoordinateChart c = catalog::cigar_chart();
    Vec x(2);
    x << 1.0, 0.0;
    Vec gradF(2);
    gradF << 2.0 * 1.0 / 2.0, 0.0;  // grad of log(1+|x|^2) at (1,0)
    const Mat f = adapted_frame(c, x, gradF);
    const Mat g = c.metric(x);
    const Mat gram = f * g * f.transpose();
    CHECK((gram - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("zero vector is rejected") {
    const CoordinateChart c = catalog::flat_chart(3);
    CHECK_THROWS_WITH_AS(adapted_frame(c, Vec::Zero(3), Vec::Zero(3)), doctest::Contains("zero-vector"),
                         GeometryError);
  }
}

TEST_CASE("error paths") {
  const CoordinateChart c = catalog::sphere_chart(3, 1.0);
  Vec outside = Vec::Zero(3);  // theta_1 = 0 pole is excluded by the domain
  CHECK_THROWS_AS(curvature_bundle(c, outside), GeometryError);

  CoordinateChart order2 = catalog::flat_chart(4);
  order2.max_order = 2;
  Vec x = Vec::Zero(4);
  CHECK_THROWS_WITH_AS(conformal_bundle(order2, x), doctest::Contains("insufficient-derivative-order"),
                       GeometryError);

  const CoordinateChart c2 = catalog::flat_chart(2);
  CHECK_THROWS_WITH_AS(conformal_bundle(c2, Vec::Zero(2)), doctest::Contains("dimension-too-small"),
                       GeometryError);
  CHECK_THROWS_WITH_AS(weyl_divergence_residual(catalog::flat_chart(3), Vec::Zero(3)),
                       doctest::Contains("dimension-too-small"), GeometryError);

  CoordinateChart bad = catalog::flat_chart(2);
  bad.metric = [](const Vec&) {
    Mat g(2, 2);
    g << 1.0, 0.0, 0.0, -1.0;
    return g;
  };
  CHECK_THROWS_WITH_AS(curvature_bundle(bad, Vec::Zero(2)),
                       doctest::Contains("metric-not-positive-definite"), GeometryError);
}
