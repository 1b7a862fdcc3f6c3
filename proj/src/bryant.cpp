#include "riccikit/bryant.hpp"

#include <boost/numeric/odeint.hpp>

#include "riccikit/catalog.hpp"

namespace riccikit {
namespace bryant {

namespace {

// truncated power series helpers (coefficients of r^0..r^M)
using Series = std::vector<double>;

Series mul(const Series& a, const Series& b, int M) {
  Series c(M + 1, 0.0);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j + i <= M; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series diff(const Series& a) {
  Series d(a.size(), 0.0);
  for (size_t k = 1; k < a.size(); ++k) d[k - 1] = k * a[k];
  return d;
}

// residual coefficients of the steady system in series form:
//   G1 = phi F'' + (n-1) phi''          (odd series)
//   G2 = phi phi' F' + phi phi'' + (n-2) phi'^2 - lambda   (even series)
std::pair<Series, Series> system_series(const Series& phi, const Series& F, int n, double lambda, int M) {
  const Series dphi = diff(phi), d2phi = diff(diff(phi));
  const Series dF = diff(F), d2F = diff(diff(F));
  Series g1 = mul(phi, d2F, M);
  for (int k = 0; k <= M; ++k) g1[k] += (n - 1) * d2phi[k];
  Series g2 = mul(mul(phi, dphi, M), dF, M);
  const Series pd2 = mul(phi, d2phi, M);
  const Series dp2 = mul(dphi, dphi, M);
  for (int k = 0; k <= M; ++k) g2[k] += pd2[k] + (n - 2) * dp2[k];
  g2[0] -= lambda;
  return {g1, g2};
}

}  // namespace

double OriginSeries::phi(double r, int deriv) const {
  double acc = 0.0;
  for (size_t k = 0; k < phi_odd.size(); ++k) {
    int p = 2 * static_cast<int>(k) + 1;
    double c = phi_odd[k];
    for (int d = 0; d < deriv; ++d) c *= p - d;
    if (p - deriv < 0) continue;
    acc += c * std::pow(r, p - deriv);
  }
  return acc;
}

double OriginSeries::F(double r, int deriv) const {
  double acc = 0.0;
  for (size_t k = 0; k < F_even.size(); ++k) {
    int p = 2 * static_cast<int>(k);
    if (p - deriv < 0) continue;
    double c = F_even[k];
    for (int d = 0; d < deriv; ++d) c *= p - d;
    acc += c * std::pow(r, p - deriv);
  }
  return acc;
}

double OriginSeries::system_residual(double r) const {
  const double p = phi(r), dp = phi(r, 1), d2p = phi(r, 2);
  const double dFv = F(r, 1), d2Fv = F(r, 2);
  const double g1 = d2Fv + (n - 1) * d2p / p;
  const double g2 = p * dp * dFv - (lambda - p * d2p - (n - 2) * dp * dp);
  return std::max(std::abs(g1), std::abs(g2));
}

OriginSeries origin_series(const BryantConfig& cfg) {
  if (cfg.n < 3) throw GeometryError(ErrorCode::dimension_too_small, "Bryant construction needs n >= 3");
  if (!(cfg.normalization > 0.0))
    throw GeometryError(ErrorCode::normalization_nonpositive, "normalization must be positive");
  const int n = cfg.n;
  const double lambda = n - 2;  // unit round fiber
  const int M = std::max(cfg.series_order, 5) + 2;

  // phi = r + a3 r^3 + a5 r^5 + ..., F = F2 r^2 + F4 r^4 + ...
  // From the trace of the steady equation at the tip: R(0) = 2 n F2.
  Series phi(M + 1, 0.0), F(M + 1, 0.0);
  phi[1] = 1.0;
  F[2] = cfg.normalization / (2.0 * n);

  const int stages = (std::max(cfg.series_order, 5) - 1) / 2;  // highest phi power = 2k+1
  for (int k = 1; k <= stages; ++k) {
    const int ip = 2 * k + 1;  // phi coefficient index to solve
    const int iF = 2 * k;      // F coefficient index to solve
    const int r1 = 2 * k - 1;  // G1 row
    const int r2 = 2 * k;      // G2 row
    // residuals are affine in (phi[ip], F[iF]); probe evaluations to read
    // off the linear system
    auto rows = [&](double a, double b) {
      Series ph = phi, Fe = F;
      ph[ip] = a;
      Fe[iF] = b;
      const auto [g1, g2] = system_series(ph, Fe, n, lambda, M);
      return std::pair<double, double>(g1[r1], g2[r2]);
    };
    if (k == 1) {
      // F2 is pinned by the normalization; G1 determines a3, G2 must concur
      const double F2 = F[iF];
      const auto [c1, c2] = rows(0.0, F2);
      const auto [a1, a2] = rows(1.0, F2);
      phi[ip] = -c1 / (a1 - c1);
      const double check = c2 + (a2 - c2) * phi[ip];
      if (std::abs(check) > 1e-10 * (1.0 + std::abs(c2)))
        throw GeometryError(ErrorCode::step_failure, "origin series stage 1 inconsistent");
      continue;
    }
    const auto [c1, c2] = rows(0.0, 0.0);
    const auto [a1, a2] = rows(1.0, 0.0);
    const auto [b1, b2] = rows(0.0, 1.0);
    const double A11 = a1 - c1, A12 = b1 - c1;
    const double A21 = a2 - c2, A22 = b2 - c2;
    const double det = A11 * A22 - A12 * A21;
    if (std::abs(det) < 1e-14) throw GeometryError(ErrorCode::step_failure, "origin series stage singular");
    phi[ip] = (-c1 * A22 + c2 * A12) / det;
    F[iF] = (-A11 * c2 + A21 * c1) / det;
  }

  OriginSeries s;
  s.n = n;
  s.lambda = lambda;
  for (int p = 1; p <= std::max(cfg.series_order, 5); p += 2) s.phi_odd.push_back(phi[p]);
  for (int p = 0; p <= std::max(cfg.series_order, 5); p += 2) s.F_even.push_back(F[p]);
  return s;
}

WarpedProfile integrate(const BryantConfig& cfg) {
  if (cfg.r_seed <= 0.0 || cfg.r_seed >= cfg.r_max)
    throw GeometryError(ErrorCode::invalid_params, "need 0 < r_seed < r_max");
  const int n = cfg.n;
  const double lambda = n - 2;
  const OriginSeries series = origin_series(cfg);

  using State = std::array<double, 4>;  // (phi, phi', F, F')
  auto rhs = [n, lambda](const State& y, State& dy, double /*r*/) {
    if (!(y[0] > 0.0)) throw GeometryError(ErrorCode::phi_nonpositive_encountered, "phi <= 0 during integration");
    const auto [d2phi, d2F] = steady_rhs(y[0], y[1], y[3], n, lambda);
    dy[0] = y[1];
    dy[1] = d2phi;
    dy[2] = y[3];
    dy[3] = d2F;
  };

  // output grid: dense near the tip, relative spacing on the tail
  std::vector<double> grid;
  double r = cfg.r_seed;
  while (r < cfg.r_max) {
    grid.push_back(r);
    r += cfg.grid_density * (1.0 + r);
  }
  grid.push_back(cfg.r_max);

  WarpedProfile p;
  p.n = n;
  p.lambda = lambda;

  State y{series.phi(cfg.r_seed), series.phi(cfg.r_seed, 1), series.F(cfg.r_seed), series.F(cfg.r_seed, 1)};

  namespace od = boost::numeric::odeint;
  auto stepper = od::make_controlled(cfg.abs_tol, cfg.rel_tol, od::runge_kutta_dopri5<State>());

  auto record = [&](double rr, const State& s) {
    const auto [d2phi, d2F] = steady_rhs(s[0], s[1], s[3], n, lambda);
    // third derivative by differentiating the system once
    const double num = lambda - (n - 2) * s[1] * s[1] - s[0] * s[1] * s[3];
    const double dnum = -2.0 * (n - 2) * s[1] * d2phi -
                        (s[1] * s[1] * s[3] + s[0] * d2phi * s[3] + s[0] * s[1] * d2F);
    const double d3phi = (dnum - (num / s[0]) * s[1]) / s[0];
    p.r.push_back(rr);
    p.phi.push_back(s[0]);
    p.dphi.push_back(s[1]);
    p.d2phi.push_back(d2phi);
    p.d3phi.push_back(d3phi);
    p.F.push_back(s[2]);
    p.dF.push_back(s[3]);
    p.d2F.push_back(d2F);
    if (!(s[1] > 0.0))
      throw GeometryError(ErrorCode::step_failure, "phi' lost positivity; trajectory left the Bryant branch");
  };

  record(grid[0], y);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    try {
      od::integrate_adaptive(stepper, rhs, y, grid[i], grid[i + 1],
                             std::min(1e-4, 0.25 * (grid[i + 1] - grid[i])));
    } catch (const GeometryError&) {
      throw;
    } catch (const std::exception& e) {
      throw GeometryError(ErrorCode::step_failure, std::string("integrator failure: ") + e.what());
    }
    record(grid[i + 1], y);
  }
  return p;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t m = x.size();
  if (m < 3 || y.size() != m) throw GeometryError(ErrorCode::invalid_params, "fit_line needs >= 3 points");
  double sx = 0, sy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (size_t i = 0; i < m; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    sse += e * e;
  }
  f.residual_stderr = std::sqrt(sse / (m - 2));
  f.stderr_slope = f.residual_stderr / std::sqrt(sxx);
  return f;
}

double unit_sphere_area(int dim) {
  // area of the unit sphere S^dim embedded in R^{dim+1}
  return 2.0 * std::pow(M_PI, 0.5 * (dim + 1)) / std::tgamma(0.5 * (dim + 1));
}

AsymptoticsReport asymptotics(const WarpedProfile& p) {
  p.validate();
  const size_t m = p.size();
  const double r_hi = p.r.back();
  const double r_lo_needed = r_hi / 10.0;
  if (p.r.front() > r_lo_needed)
    throw GeometryError(ErrorCode::tail_too_short, "profile tail must span at least one decade in r");

  AsymptoticsReport rep;
  rep.tail_lo = r_lo_needed;
  rep.tail_hi = r_hi;

  // energy over the whole grid
  double e_min = 1e300, e_max = -1e300, e_sum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const WarpedCurvature w = warped_curvature(p.n, p.lambda, p.phi[i], p.dphi[i], p.d2phi[i]);
    const double e = w.scalar + p.dF[i] * p.dF[i];
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
    e_sum += e;
  }
  rep.energy_constant = e_sum / m;
  rep.energy_spread = e_max - e_min;

  // cumulative volume: Vol(B_r) = area(S^{n-2}) * int_0^r phi^{n-1};
  // the [0, r_front] head is approximated by the flat-cone value.
  std::vector<double> vol(m, 0.0);
  const double area = unit_sphere_area(p.n - 2);
  double acc = std::pow(p.r.front(), p.n) / p.n;  // phi ~ r near the tip
  vol[0] = acc;
  for (size_t i = 1; i < m; ++i) {
    const double fa = std::pow(p.phi[i - 1], p.n - 1);
    const double fb = std::pow(p.phi[i], p.n - 1);
    acc += 0.5 * (fa + fb) * (p.r[i] - p.r[i - 1]);
    vol[i] = acc;
  }

  std::vector<double> lr, lR, lV, lphi;
  double R_tail_max = 0.0;
  for (size_t i = 0; i < m; ++i) {
    if (p.r[i] < r_lo_needed) continue;
    const WarpedCurvature w = warped_curvature(p.n, p.lambda, p.phi[i], p.dphi[i], p.d2phi[i]);
    lr.push_back(std::log(p.r[i]));
    lV.push_back(std::log(area * vol[i]));
    lphi.push_back(std::log(p.phi[i]));
    R_tail_max = std::max(R_tail_max, std::abs(w.scalar));
    lR.push_back(w.scalar > 0.0 ? std::log(w.scalar) : -745.0);
  }
  if (lr.size() < 8) throw GeometryError(ErrorCode::tail_too_short, "too few tail samples for the fits");

  if (R_tail_max < 1e-13) {
    rep.curvature_degenerate = true;
  } else {
    const LineFit f = fit_line(lr, lR);
    rep.curvature_decay_exponent = f.slope;
    rep.curvature_fit_stderr = f.residual_stderr;
  }
  const LineFit fv = fit_line(lr, lV);
  rep.volume_growth_exponent = fv.slope;
  rep.volume_fit_stderr = fv.residual_stderr;
  const LineFit fp = fit_line(lr, lphi);
  rep.phi_growth_exponent = fp.slope;
  rep.phi_fit_stderr = fp.residual_stderr;
  return rep;
}

SolitonChart as_soliton(const WarpedProfile& p) {
  FiberSpec fiber;
  fiber.fiber_dim = p.n - 1;
  fiber.einstein_lambda = p.n - 2;
  fiber.fiber_chart = catalog::sphere_chart(p.n - 1, 1.0);
  SolitonChart s = warped_steady_soliton(p, fiber);
  // conserved energy from the first node; grad F -> 0 at the tip
  const WarpedCurvature w = warped_curvature(p.n, p.lambda, p.phi[0], p.dphi[0], p.d2phi[0]);
  s.hamilton_constant = w.scalar + p.dF[0] * p.dF[0];
  return s;
}

}  // namespace bryant
}  // namespace riccikit
