#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riccikit/level_set.hpp"
#include "test_support.hpp"

using namespace riccikit;
using namespace testsup;

namespace {

SolitonChart flat_quadratic(int n, Vec coeffs, double rho) {
  // f = sum coeffs_i x_i^2 / 2
  PotentialEval f;
  f.value = [coeffs](const Vec& x) { return 0.5 * x.cwiseProduct(coeffs).dot(x); };
  f.grad = [coeffs](const Vec& x) { return Vec(coeffs.cwiseProduct(x)); };
  f.hess = [coeffs](const Vec&) { return Mat(coeffs.asDiagonal()); };
  return SolitonChart::general(catalog::flat_chart(n), f, rho);
}

}  // namespace

TEST_CASE("planes in flat space are totally geodesic") {
  PotentialEval f;
  f.value = [](const Vec& x) { return x[0]; };
  f.grad = [](const Vec& x) {
    Vec g = Vec::Zero(x.size());
    g[0] = 1.0;
    return g;
  };
  f.hess = [](const Vec& x) { return Mat(Mat::Zero(x.size(), x.size())); };
  const SolitonChart s = SolitonChart::general(catalog::flat_chart(3), f, 0.0);
  const LevelSetReport r = level_diagnostics(s, Vec::Zero(3));
  CHECK(r.h.norm() < 1e-13);
  CHECK(std::abs(r.H) < 1e-13);
  CHECK(r.umbilicity_deficit < 1e-13);
  CHECK(r.normal_ricci_mix < 1e-13);
}

TEST_CASE("euclidean spheres: h = (1/r) g with outward normal") {
  const SolitonChart s = flat_quadratic(3, Vec::Constant(3, 1.0), 1.0);  // f = |x|^2/2
  Vec x(3);
  x << 2.0, 0.0, 0.0;  // radius 2
  const LevelSetReport r = level_diagnostics(s, x);
  CHECK((r.h - 0.5 * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(r.H == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.umbilicity_deficit < 1e-12);
  // outward normal: along +x at (2,0,0)
  CHECK(r.unit_normal[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cigar level circles with the steady-F sign convention") {
  // F = log(1+r^2) increases outward; h of the circle r = 1 in the cigar
  // metric must be positive toward infinity (the cigar is asymptotically a
  // cylinder, so H -> 0 at large radius but stays > 0).
  const SolitonChart s = catalog::make("cigar").soliton;
  Vec x(2);
  x << 1.0, 0.0;
  const LevelSetReport r = level_diagnostics(s, x);
  CHECK(r.unit_normal[0] > 0.0);
  CHECK(r.H > 0.0);
}

TEST_CASE("anisotropic quadratic potential is not umbilic") {
  Vec coeffs(3);
  coeffs << 1.0, 2.0, 3.0;
  const SolitonChart s = flat_quadratic(3, coeffs, 0.0);
  Vec x(3);
  x << 1.0, 1.0, 1.0;
  const LevelSetReport r = level_diagnostics(s, x);
  CHECK(r.umbilicity_deficit > 1e-2);
}

TEST_CASE("Ricci eigenstructure reporting") {
  SUBCASE("round sphere has a single cluster of multiplicity n") {
    const auto e = catalog::make("round_sphere", {{"n", 4}});
    SolitonChart s = e.soliton;
    // give the sphere a nontrivial potential so a frame exists
    PotentialEval f;
    f.value = [](const Vec& x) { return x[0]; };
    s.f = f;
    Vec x = Vec::Constant(4, M_PI / 2.0);
    const LevelSetReport r = level_diagnostics(s, x);
    REQUIRE(r.ricci_eigs.size() == 1);
    CHECK(r.ricci_eigs[0].second == 4);
    CHECK(r.ricci_eigs[0].first == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(r.normal_eigenvalue == doctest::Approx(3.0).epsilon(1e-8));
  }
  SUBCASE("flat space reports the zero eigenvalue with full multiplicity") {
    const SolitonChart s = flat_quadratic(3, Vec::Constant(3, 1.0), 1.0);
    Vec x(3);
    x << 1.0, 0.5, 0.0;
    const LevelSetReport r = level_diagnostics(s, x);
    REQUIRE(r.ricci_eigs.size() == 1);
    CHECK(r.ricci_eigs[0].second == 3);
  }
}

TEST_CASE("eigenvalue clustering gap") {
  Vec eigs(4);
  eigs << 1.0, 1.0 + 1e-6, 2.0, 2.0 + 1e-6;
  const auto clusters = cluster_eigenvalues(eigs, 1e-4);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].second == 2);
  CHECK(clusters[1].second == 2);
  const auto fine = cluster_eigenvalues(eigs, 1e-8);
  CHECK(fine.size() == 4);
}

TEST_CASE("constancy scan") {
  SUBCASE("product line x flat torus with linear potential: zero spreads") {
    const SolitonChart s = catalog::make("product_line_cross_fiber", {{"fiber_flat", 1}}).soliton;
    const ConstancyScan scan = constancy_scan(s, 0.5, 16, 5);
    CHECK(scan.spread_scalar < 1e-12);
    CHECK(scan.spread_grad2 < 1e-12);
    CHECK(scan.spread_mean_curvature < 1e-12);
  }
  SUBCASE("non-Einstein fiber control: scalar curvature varies over the slice") {
    const SolitonChart s = catalog::make("warped_control_non_einstein_fiber").soliton;
    const ConstancyScan scan = constancy_scan(s, 1.5, 24, 7);
    CHECK(scan.spread_scalar > 1e-3);
  }
  SUBCASE("missing fibration is an error") {
    const SolitonChart s = catalog::make("euclidean_schwarzschild").soliton;
    CHECK_THROWS_WITH_AS(constancy_scan(s, 4.0, 8), doctest::Contains("no-fibration-declared"),
                         GeometryError);
  }
  SUBCASE("sample count gate") {
    const SolitonChart s = catalog::make("product_line_cross_fiber", {{"fiber_flat", 1}}).soliton;
    CHECK_THROWS_AS(constancy_scan(s, 0.5, 1), GeometryError);
  }
}

TEST_CASE("steady fixtures with small D have umbilic slices and aligned Ricci") {
  // product factor slices are totally geodesic; everything should vanish
  const SolitonChart s = catalog::make("product_line_cross_fiber").soliton;
  for (const Vec& x : sample_points(s.chart, 10, 37)) {
    const CurvatureBundle b = curvature_bundle(s.chart, x);
    const double d = g_norm3(d_tensor(s, x, DMethod::direct), b.ginv);
    REQUIRE(d < 1e-6);
    const LevelSetReport r = level_diagnostics(s, x);
    CHECK(r.umbilicity_deficit < 1e-5);
    CHECK(r.normal_ricci_mix < 1e-5);
  }
}

TEST_CASE("critical points are refused") {
  const SolitonChart s = flat_quadratic(3, Vec::Constant(3, 1.0), 1.0);
  CHECK_THROWS_WITH_AS(level_diagnostics(s, Vec::Zero(3)), doctest::Contains("critical-point"),
                       GeometryError);
}
