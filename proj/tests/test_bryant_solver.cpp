#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riccikit/bryant.hpp"
#include "riccikit/level_set.hpp"
#include "test_support.hpp"

using namespace riccikit;
using bryant::BryantConfig;

namespace {

WarpedProfile quick_profile(int n, double r_max = 200.0, double normalization = 1.0) {
  BryantConfig cfg;
  cfg.n = n;
  cfg.r_max = r_max;
  cfg.normalization = normalization;
  return bryant::integrate(cfg);
}

}  // namespace

TEST_CASE("origin series") {
  SUBCASE("leading terms forced by smoothness at the tip") {
    for (int n : {3, 4, 5, 6}) {
      BryantConfig cfg;
      cfg.n = n;
      const auto s = bryant::origin_series(cfg);
      CHECK(s.phi_odd[0] == doctest::Approx(1.0));  // phi'(0) = 1
      CHECK(s.phi(0.0, 2) == doctest::Approx(0.0)); // phi''(0) = 0, odd series
      CHECK(s.F(0.0, 1) == doctest::Approx(0.0));   // F'(0) = 0, even series
    }
  }
  SUBCASE("coefficients match the hand-derived recurrences") {
    // a3 = -F2/(3(n-1)), a5 = 3(13n-10) a3^2 / (10(n+2)), F2 = R0/(2n)
    for (int n : {3, 4, 5, 6}) {
      BryantConfig cfg;
      cfg.n = n;
      cfg.normalization = 2.0;
      const auto s = bryant::origin_series(cfg);
      const double F2 = cfg.normalization / (2.0 * n);
      const double a3 = -F2 / (3.0 * (n - 1));
      const double a5 = 3.0 * (13.0 * n - 10.0) * a3 * a3 / (10.0 * (n + 2));
      CHECK(s.F_even[1] == doctest::Approx(F2).epsilon(1e-14));
      CHECK(s.phi_odd[1] == doctest::Approx(a3).epsilon(1e-13));
      CHECK(s.phi_odd[2] == doctest::Approx(a5).epsilon(1e-12));
    }
  }
  SUBCASE("system residual on the truncated series is tiny at the handoff") {
    for (int n : {3, 5}) {
      BryantConfig cfg;
      cfg.n = n;
      const auto s = bryant::origin_series(cfg);
      CHECK(s.system_residual(cfg.r_seed) < 1e-10);
      CHECK(s.system_residual(2e-3) < 1e-10);
    }
  }
  SUBCASE("rhs of the steady system matches the series second derivatives") {
    BryantConfig cfg;
    cfg.n = 4;
    const auto s = bryant::origin_series(cfg);
    const double r = 1e-3;
    const auto [d2phi, d2F] = steady_rhs(s.phi(r), s.phi(r, 1), s.F(r, 1), 4, 2.0);
    CHECK(std::abs(d2phi - s.phi(r, 2)) < 1e-8);
    CHECK(std::abs(d2F - s.F(r, 2)) < 1e-8);
  }
  SUBCASE("normalization must be positive") {
    BryantConfig cfg;
    cfg.normalization = -1.0;
    CHECK_THROWS_WITH_AS(bryant::origin_series(cfg), doctest::Contains("normalization-nonpositive"),
                         GeometryError);
  }
  SUBCASE("dimension gate") {
    BryantConfig cfg;
    cfg.n = 2;
    CHECK_THROWS_WITH_AS(bryant::origin_series(cfg), doctest::Contains("dimension-too-small"),
                         GeometryError);
  }
}

TEST_CASE("trajectory invariants") {
  for (int n : {3, 4, 5, 6}) {
    CAPTURE(n);
    const WarpedProfile p = quick_profile(n, n == 3 ? 100.0 : 200.0);
    double e_min = 1e300, e_max = -1e300;
    for (size_t i = 0; i < p.size(); ++i) {
      const auto w = warped_curvature(p.n, p.lambda, p.phi[i], p.dphi[i], p.d2phi[i]);
      const double e = w.scalar + p.dF[i] * p.dF[i];
      e_min = std::min(e_min, e);
      e_max = std::max(e_max, e);
      CHECK(w.scalar >= 0.0);       // complete steady solitons have R >= 0
      CHECK(p.dphi[i] > 0.0);       // monotone warping function
      // the stored second derivatives satisfy the system at every node
      const auto [d2phi, d2F] = steady_rhs(p.phi[i], p.dphi[i], p.dF[i], p.n, p.lambda);
      CHECK(std::abs(d2phi - p.d2phi[i]) < 1e-9 * (1.0 + std::abs(d2phi)));
      CHECK(std::abs(d2F - p.d2F[i]) < 1e-9 * (1.0 + std::abs(d2F)));
    }
    CHECK(e_max - e_min < 1e-7 * 1.0);  // conservation, C0 = normalization = 1
  }
}

TEST_CASE("scalar curvature decreases along the tail") {
  const WarpedProfile p = quick_profile(5);
  double prev = 1e300;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p.r[i] < 5.0) continue;
    const auto w = warped_curvature(p.n, p.lambda, p.phi[i], p.dphi[i], p.d2phi[i]);
    CHECK(w.scalar < prev);
    prev = w.scalar;
  }
}

TEST_CASE("d3phi column is consistent with differentiating the system") {
  const WarpedProfile p = quick_profile(4, 50.0);
  // independent check: FD of the spline phi'' against the stored phi'''
  const QuinticHermite sp(p.r, p.phi, p.dphi, p.d2phi);
  for (size_t i = 5; i < p.size() - 5; i += 13) {
    const double r = p.r[i];
    const double h = 1e-4 * (1.0 + r);
    const double fd = (sp.eval(r + h, 2) - sp.eval(r - h, 2)) / (2.0 * h);
    CHECK(std::abs(fd - p.d3phi[i]) < 1e-4 * (1.0 + std::abs(p.d3phi[i])));
  }
}

TEST_CASE("series handoff") {
  SUBCASE("series and integrator agree at the handoff radius") {
    // integrate from a quarter of the default seed up to the seed itself and
    // compare against the series representation there
    BryantConfig early;
    early.n = 4;
    early.r_seed = 0.25e-3;
    early.r_max = 1.0;
    early.grid_density = 2e-4;  // puts a node near 1e-3
    const auto s = bryant::origin_series(early);
    const WarpedProfile p = bryant::integrate(early);
    for (size_t i = 0; i < p.size(); ++i) {
      if (p.r[i] > 1.1e-3) break;
      CHECK(std::abs(p.phi[i] - s.phi(p.r[i])) < 1e-10);
      CHECK(std::abs(p.dF[i] - s.F(p.r[i], 1)) < 1e-10);
    }
  }
  SUBCASE("changing the seed radius moves the trajectory only at integrator accuracy") {
    BryantConfig a;
    a.n = 4;
    a.r_max = 10.0;
    BryantConfig b = a;
    b.r_seed = 4e-3;
    const WarpedProfile pa = bryant::integrate(a);
    const WarpedProfile pb = bryant::integrate(b);
    const QuinticHermite sa(pa.r, pa.phi, pa.dphi, pa.d2phi);
    for (size_t i = 0; i < pb.size(); i += 17) {
      if (pb.r[i] < pa.r.front() || pb.r[i] > pa.r.back()) continue;
      CHECK(std::abs(sa.eval(pb.r[i]) - pb.phi[i]) < 1e-8);
    }
  }
}

TEST_CASE("normalization is realized as R at the tip") {
  for (double target : {1.0, 2.5}) {
    BryantConfig cfg;
    cfg.n = 4;
    cfg.r_max = 10.0;
    cfg.normalization = target;
    const WarpedProfile p = bryant::integrate(cfg);
    const auto w = warped_curvature(p.n, p.lambda, p.phi[0], p.dphi[0], p.d2phi[0]);
    CHECK(w.scalar == doctest::Approx(target).epsilon(1e-6));
  }
}

TEST_CASE("asymptotics") {
  SUBCASE("curvature decay and volume growth for n = 3 and 4") {
    for (int n : {3, 4}) {
      const WarpedProfile p = quick_profile(n, 1000.0);
      const auto rep = bryant::asymptotics(p);
      CHECK(std::abs(rep.curvature_decay_exponent - (-1.0)) < 0.05);
      CHECK(std::abs(rep.volume_growth_exponent - (n + 1) / 2.0) < 0.1);
      CHECK(std::abs(rep.phi_growth_exponent - 0.5) < 0.05);
      CHECK(rep.energy_constant == doctest::Approx(1.0).epsilon(1e-7));
      CHECK_FALSE(rep.curvature_degenerate);
    }
  }
  SUBCASE("flat profile: exact volume exponent, degenerate curvature fit") {
    WarpedProfile p;
    p.n = 4;
    p.lambda = 2.0;
    for (double r = 0.1; r < 100.0; r *= 1.03) {
      p.r.push_back(r);
      p.phi.push_back(r);
      p.dphi.push_back(1.0);
      p.d2phi.push_back(0.0);
      p.d3phi.push_back(0.0);
      p.F.push_back(0.0);
      p.dF.push_back(0.0);
      p.d2F.push_back(0.0);
    }
    const auto rep = bryant::asymptotics(p);
    CHECK(rep.curvature_degenerate);
    CHECK(rep.volume_growth_exponent == doctest::Approx(4.0).epsilon(1e-3));
  }
  SUBCASE("tail shorter than a decade is rejected") {
    WarpedProfile p = quick_profile(3, 5.0);
    WarpedProfile q;
    q.n = p.n;
    q.lambda = p.lambda;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p.r[i] < 2.0) continue;
      q.r.push_back(p.r[i]);
      q.phi.push_back(p.phi[i]);
      q.dphi.push_back(p.dphi[i]);
      q.d2phi.push_back(p.d2phi[i]);
      q.d3phi.push_back(p.d3phi[i]);
      q.F.push_back(p.F[i]);
      q.dF.push_back(p.dF[i]);
      q.d2F.push_back(p.d2F[i]);
    }
    CHECK_THROWS_WITH_AS(bryant::asymptotics(q), doctest::Contains("tail-too-short"), GeometryError);
  }
}

TEST_CASE("scaling covariance: normalizations c and 4c give conjugate profiles") {
  BryantConfig c1;
  c1.n = 4;
  c1.r_max = 200.0;
  BryantConfig c4 = c1;
  c4.normalization = 4.0;
  const WarpedProfile p1 = bryant::integrate(c1);
  const WarpedProfile p4 = bryant::integrate(c4);
  const QuinticHermite s4(p4.r, p4.phi, p4.dphi, p4.d2phi);
  double worst_phi = 0.0, worst_R = 0.0;
  for (size_t i = 0; i < p1.size(); i += 5) {
    const double r = p1.r[i];
    if (r / 2 < p4.r.front() || r / 2 > p4.r.back()) continue;
    worst_phi = std::max(worst_phi, std::abs(p1.phi[i] - 2.0 * s4.eval(r / 2)));
    const auto w1 = warped_curvature(4, 2.0, p1.phi[i], p1.dphi[i], p1.d2phi[i]);
    const auto w4 = warped_curvature(4, 2.0, s4.eval(r / 2), s4.eval(r / 2, 1), s4.eval(r / 2, 2));
    worst_R = std::max(worst_R, std::abs(w1.scalar - 0.25 * w4.scalar));
  }
  CHECK(worst_phi < 1e-6);
  CHECK(worst_R < 1e-6);
}

TEST_CASE("assembled Bryant chart is a steady soliton with umbilic level spheres") {
  const WarpedProfile p = quick_profile(4, 100.0);
  SolitonChart s = bryant::as_soliton(p);
  std::mt19937_64 rng(5);
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const Vec theta = s.fibration->fiber_domain.sample(rng);
    const Vec x = s.fibration->embed(r, theta);
    CHECK(soliton_residual(s, x) < 1e-5);
    const auto h = hamilton_identities(s, x);
    CHECK(h.energy == doctest::Approx(1.0).epsilon(1e-6));
    const auto lr = level_diagnostics(s, x);
    CHECK(lr.umbilicity_deficit < 1e-5);
    CHECK(lr.normal_ricci_mix < 1e-5);
    REQUIRE(lr.ricci_eigs.size() == 2);
    const bool pattern = (lr.ricci_eigs[0].second == 1 && lr.ricci_eigs[1].second == 3) ||
                         (lr.ricci_eigs[0].second == 3 && lr.ricci_eigs[1].second == 1);
    CHECK(pattern);
    // level spheres carry h = (phi'/phi) gbar with the outward normal
    const QuinticHermite sp(p.r, p.phi, p.dphi, p.d2phi);
    CHECK(lr.H == doctest::Approx(3.0 * sp.eval(r, 1) / sp.eval(r)).epsilon(1e-6));
  }
}

TEST_CASE("weyl divergence identity on the assembled chart") {
  const WarpedProfile p = quick_profile(4, 50.0);
  SolitonChart s = bryant::as_soliton(p);
  const Vec x = s.fibration->embed(2.0, Vec::Constant(3, 1.3));
  CHECK(weyl_divergence_residual(s.chart, x) < 1e-4);
}

TEST_CASE("constancy scan on the Bryant chart") {
  const WarpedProfile p = quick_profile(4, 50.0);
  SolitonChart s = bryant::as_soliton(p);
  const ConstancyScan scan = constancy_scan(s, 2.0, 32, 11);
  CHECK(scan.spread_scalar < 1e-6);
  CHECK(scan.spread_grad2 < 1e-6);
  CHECK(scan.spread_mean_curvature < 1e-6);
}

TEST_CASE("config validation") {
  BryantConfig cfg;
  cfg.r_seed = 2.0;
  cfg.r_max = 1.0;
  CHECK_THROWS_AS(bryant::integrate(cfg), GeometryError);
}
