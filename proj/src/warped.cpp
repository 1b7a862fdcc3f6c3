#include "riccikit/warped.hpp"

#include <cstdio>
#include <memory>
#include <cstring>
#include <fstream>
#include <sstream>

namespace riccikit {

// ---- quintic Hermite ----

QuinticHermite::QuinticHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy,
                               std::vector<double> d2y)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)), d2y_(std::move(d2y)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != dy_.size() || x_.size() != d2y_.size())
    throw GeometryError(ErrorCode::invalid_params, "quintic Hermite needs matched arrays, >= 2 nodes");
}

int QuinticHermite::find_interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double QuinticHermite::eval(double x, int deriv) const {
  const int i = find_interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  // basis values/derivatives in t for (y0, h y0', h^2 y0'', y1, h y1', h^2 y1'')
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  double b[6];
  switch (deriv) {
    case 0:
      b[0] = 1 - 10 * t3 + 15 * t4 - 6 * t5;
      b[1] = t - 6 * t3 + 8 * t4 - 3 * t5;
      b[2] = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
      b[3] = 10 * t3 - 15 * t4 + 6 * t5;
      b[4] = -4 * t3 + 7 * t4 - 3 * t5;
      b[5] = 0.5 * (t3 - 2 * t4 + t5);
      break;
    case 1:
      b[0] = -30 * t2 + 60 * t3 - 30 * t4;
      b[1] = 1 - 18 * t2 + 32 * t3 - 15 * t4;
      b[2] = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
      b[3] = 30 * t2 - 60 * t3 + 30 * t4;
      b[4] = -12 * t2 + 28 * t3 - 15 * t4;
      b[5] = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
      break;
    case 2:
      b[0] = -60 * t + 180 * t2 - 120 * t3;
      b[1] = -36 * t + 96 * t2 - 60 * t3;
      b[2] = 0.5 * (2 - 18 * t + 36 * t2 - 20 * t3);
      b[3] = 60 * t - 180 * t2 + 120 * t3;
      b[4] = -24 * t + 84 * t2 - 60 * t3;
      b[5] = 0.5 * (6 * t - 24 * t2 + 20 * t3);
      break;
    case 3:
      b[0] = -60 + 360 * t - 360 * t2;
      b[1] = -36 + 192 * t - 180 * t2;
      b[2] = 0.5 * (-18 + 72 * t - 60 * t2);
      b[3] = 60 - 360 * t + 360 * t2;
      b[4] = -24 + 168 * t - 180 * t2;
      b[5] = 0.5 * (6 - 48 * t + 60 * t2);
      break;
    default:
      throw GeometryError(ErrorCode::invalid_params, "quintic Hermite supports derivatives 0..3");
  }
  const double v = b[0] * y_[i] + b[1] * h * dy_[i] + b[2] * h * h * d2y_[i] + b[3] * y_[i + 1] +
                   b[4] * h * dy_[i + 1] + b[5] * h * h * d2y_[i + 1];
  double scale = 1.0;
  for (int k = 0; k < deriv; ++k) scale /= h;
  return v * scale;
}

// ---- natural cubic spline ----

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 3 || y_.size() != x_.size())
    throw GeometryError(ErrorCode::invalid_params, "cubic spline needs >= 3 matched nodes");
  m_.assign(n, 0.0);
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  b[0] = 1.0;
  b[n - 1] = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    a[i] = hl / 6.0;
    b[i] = (hl + hr) / 3.0;
    c[i] = hr / 6.0;
    d[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
  }
  // Thomas solve
  for (int i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (int i = n - 2; i >= 0; --i) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

int CubicSpline::find_interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double CubicSpline::eval(double x) const {
  const int i = find_interval(x);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h;
  const double B = (x - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

// ---- closed-form warped quantities ----

WarpedCurvature warped_curvature(int n, double lambda, double phi, double dphi, double d2phi) {
  if (!(phi > 0.0)) throw GeometryError(ErrorCode::nonpositive_phi, "warped_curvature needs phi > 0");
  WarpedCurvature w;
  w.ricci_radial = -(n - 1) * d2phi / phi;
  w.ricci_fiber_coeff = lambda - phi * d2phi - (n - 2) * dphi * dphi;
  w.scalar = (n - 1) / (phi * phi) * (lambda - 2.0 * phi * d2phi) -
             (n - 1.0) * (n - 2.0) * (dphi / phi) * (dphi / phi);
  return w;
}

WarpedHessian warped_hessian(double dF, double d2F, double phi, double dphi) {
  if (!(phi > 0.0)) throw GeometryError(ErrorCode::nonpositive_phi, "warped_hessian needs phi > 0");
  WarpedHessian h;
  h.radial = d2F;
  h.fiber_coeff = phi * dphi * dF;
  return h;
}

std::pair<double, double> steady_rhs(double phi, double dphi, double dF, int n, double lambda) {
  if (!(phi > 0.0)) throw GeometryError(ErrorCode::nonpositive_phi, "steady_rhs needs phi > 0");
  const double d2phi = (lambda - (n - 2) * dphi * dphi - phi * dphi * dF) / phi;
  const double d2F = -(n - 1) * d2phi / phi;
  return {d2phi, d2F};
}

// ---- profile ----

void WarpedProfile::validate() const {
  const size_t m = r.size();
  auto chk = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != m)
      throw GeometryError(ErrorCode::invalid_params, std::string("profile column ") + name + " length mismatch");
  };
  chk(phi, "phi"); chk(dphi, "dphi"); chk(d2phi, "d2phi"); chk(d3phi, "d3phi");
  chk(F, "F"); chk(dF, "dF"); chk(d2F, "d2F");
  for (size_t i = 0; i + 1 < m; ++i)
    if (!(r[i] < r[i + 1]))
      throw GeometryError(ErrorCode::invalid_params, "profile grid must be strictly increasing");
  for (size_t i = 0; i < m; ++i)
    if (!(phi[i] > 0.0))
      throw GeometryError(ErrorCode::nonpositive_phi, "profile phi must be positive");
  if (n < 2) throw GeometryError(ErrorCode::invalid_params, "profile dimension must be >= 2");
}

void write_profile_csv(const WarpedProfile& p, const std::string& path) {
  p.validate();
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw GeometryError(ErrorCode::io_error, "cannot open " + path + " for writing");
  std::fprintf(fp, "# n=%d lambda=%.16e\n", p.n, p.lambda);
  std::fprintf(fp, "r,phi,dphi,d2phi,d3phi,F,dF,d2F\n");
  for (size_t i = 0; i < p.size(); ++i)
    std::fprintf(fp, "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", p.r[i], p.phi[i], p.dphi[i],
                 p.d2phi[i], p.d3phi[i], p.F[i], p.dF[i], p.d2F[i]);
  std::fclose(fp);
}

WarpedProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::io_error, "cannot open " + path);
  WarpedProfile p;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      int n = 0;
      double lambda = 0.0;
      if (std::sscanf(line.c_str(), "# n=%d lambda=%lf", &n, &lambda) == 2) {
        p.n = n;
        p.lambda = lambda;
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("r,phi,dphi,d2phi,d3phi,F,dF,d2F", 0) != 0)
        throw GeometryError(ErrorCode::io_error, "profile CSV header mismatch in " + path);
      header_seen = true;
      continue;
    }
    double v[8];
    std::stringstream ss(line);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',') && k < 8) v[k++] = std::stod(cell);
    if (k != 8) throw GeometryError(ErrorCode::io_error, "profile CSV row with != 8 columns in " + path);
    p.r.push_back(v[0]); p.phi.push_back(v[1]); p.dphi.push_back(v[2]); p.d2phi.push_back(v[3]);
    p.d3phi.push_back(v[4]); p.F.push_back(v[5]); p.dF.push_back(v[6]); p.d2F.push_back(v[7]);
  }
  if (!header_seen) throw GeometryError(ErrorCode::io_error, "profile CSV missing header in " + path);
  if (p.n == 0) throw GeometryError(ErrorCode::io_error, "profile CSV missing '# n=... lambda=...' line");
  p.validate();
  return p;
}

// ---- chart assembly ----

WarpedChart make_warped_chart(RadialFn phi, RadialFn F, const CoordinateChart& fiber,
                              double r_lo, double r_hi, const std::string& label) {
  const int nf = fiber.dim;
  const int n = nf + 1;
  if (!fiber.dmetric || !fiber.d2metric)
    throw GeometryError(ErrorCode::missing_fiber_chart,
                        "warped assembly needs a fiber chart with analytic derivatives");
  const int order = fiber.d3metric ? 3 : 2;

  CoordinateChart c;
  c.dim = n;
  c.max_order = std::min(order, fiber.max_order);
  c.label = label;
  c.domain.lo = Vec(n);
  c.domain.hi = Vec(n);
  c.domain.lo[0] = r_lo;
  c.domain.hi[0] = r_hi;
  for (int a = 0; a < nf; ++a) {
    c.domain.lo[a + 1] = fiber.domain.lo[a] + fiber.domain.margin;
    c.domain.hi[a + 1] = fiber.domain.hi[a] - fiber.domain.margin;
  }
  c.domain.margin = 0.0;
  if (fiber.predicate) {
    auto fp = fiber.predicate;
    c.predicate = [fp, nf](const Vec& x) { return fp(x.tail(nf)); };
  }

  auto theta_of = [nf](const Vec& x) { return Vec(x.tail(nf)); };

  c.metric = [phi, fiber, theta_of, nticks = n](const Vec& x) {
    const int n = nticks;
    const double p = phi.v(x[0]);
    const Mat gbar = fiber.metric(theta_of(x));
    Mat g = Mat::Zero(n, n);
    g(0, 0) = 1.0;
    g.block(1, 1, n - 1, n - 1) = p * p * gbar;
    return g;
  };
  c.dmetric = [phi, fiber, theta_of, nn = n](const Vec& x) {
    const int n = nn, nf = n - 1;
    const double p = phi.v(x[0]), dp = phi.d1(x[0]);
    const Vec th = theta_of(x);
    const Mat gbar = fiber.metric(th);
    const Tensor3 dgbar = fiber.dmetric(th);
    Tensor3 t(n);
    for (int a = 0; a < nf; ++a)
      for (int b = 0; b < nf; ++b) {
        t(0, a + 1, b + 1) = 2.0 * p * dp * gbar(a, b);
        for (int cidx = 0; cidx < nf; ++cidx) t(cidx + 1, a + 1, b + 1) = p * p * dgbar(cidx, a, b);
      }
    return t;
  };
  c.d2metric = [phi, fiber, theta_of, nn = n](const Vec& x) {
    const int n = nn, nf = n - 1;
    const double p = phi.v(x[0]), dp = phi.d1(x[0]), d2p = phi.d2(x[0]);
    const Vec th = theta_of(x);
    const Mat gbar = fiber.metric(th);
    const Tensor3 dgbar = fiber.dmetric(th);
    const Tensor4 d2gbar = fiber.d2metric(th);
    Tensor4 t(n);
    const double crr = 2.0 * (dp * dp + p * d2p);
    for (int a = 0; a < nf; ++a)
      for (int b = 0; b < nf; ++b) {
        t(0, 0, a + 1, b + 1) = crr * gbar(a, b);
        for (int cidx = 0; cidx < nf; ++cidx) {
          t(0, cidx + 1, a + 1, b + 1) = 2.0 * p * dp * dgbar(cidx, a, b);
          t(cidx + 1, 0, a + 1, b + 1) = t(0, cidx + 1, a + 1, b + 1);
          for (int didx = 0; didx < nf; ++didx)
            t(cidx + 1, didx + 1, a + 1, b + 1) = p * p * d2gbar(cidx, didx, a, b);
        }
      }
    return t;
  };
  if (order >= 3) {
    c.d3metric = [phi, fiber, theta_of, nn = n](const Vec& x) {
      const int n = nn, nf = n - 1;
      const double p = phi.v(x[0]), dp = phi.d1(x[0]), d2p = phi.d2(x[0]), d3p = phi.d3(x[0]);
      const Vec th = theta_of(x);
      const Mat gbar = fiber.metric(th);
      const Tensor3 dgbar = fiber.dmetric(th);
      const Tensor4 d2gbar = fiber.d2metric(th);
      const Tensor5 d3gbar = fiber.d3metric(th);
      Tensor5 t(n);
      const double crrr = 2.0 * (3.0 * dp * d2p + p * d3p);
      const double crr = 2.0 * (dp * dp + p * d2p);
      for (int a = 0; a < nf; ++a)
        for (int b = 0; b < nf; ++b) {
          t(0, 0, 0, a + 1, b + 1) = crrr * gbar(a, b);
          for (int cidx = 0; cidx < nf; ++cidx) {
            const double v_rrc = crr * dgbar(cidx, a, b);
            t(0, 0, cidx + 1, a + 1, b + 1) = v_rrc;
            t(0, cidx + 1, 0, a + 1, b + 1) = v_rrc;
            t(cidx + 1, 0, 0, a + 1, b + 1) = v_rrc;
            for (int didx = 0; didx < nf; ++didx) {
              const double v_rcd = 2.0 * p * dp * d2gbar(cidx, didx, a, b);
              t(0, cidx + 1, didx + 1, a + 1, b + 1) = v_rcd;
              t(cidx + 1, 0, didx + 1, a + 1, b + 1) = v_rcd;
              t(cidx + 1, didx + 1, 0, a + 1, b + 1) = v_rcd;
              for (int e = 0; e < nf; ++e)
                t(cidx + 1, didx + 1, e + 1, a + 1, b + 1) = p * p * d3gbar(cidx, didx, e, a, b);
            }
          }
        }
      return t;
    };
  }

  WarpedChart out;
  out.chart = std::move(c);
  out.potential_F.value = [F](const Vec& x) { return F.v(x[0]); };
  out.potential_F.grad = [F, nn = n](const Vec& x) {
    Vec g = Vec::Zero(nn);
    g[0] = F.d1(x[0]);
    return g;
  };
  out.potential_F.hess = [F, nn = n](const Vec& x) {
    Mat h = Mat::Zero(nn, nn);
    h(0, 0) = F.d2(x[0]);
    return h;
  };
  out.fibration.embed = [nn = n](double level, const Vec& theta) {
    Vec x(nn);
    x[0] = level;
    x.tail(nn - 1) = theta;
    return x;
  };
  out.fibration.fiber_domain = fiber.domain;
  out.fibration.level_min = r_lo;
  out.fibration.level_max = r_hi;
  return out;
}

WarpedChart profile_to_chart(const WarpedProfile& p, const FiberSpec& fiber) {
  p.validate();
  if (p.size() < 8) throw GeometryError(ErrorCode::grid_too_coarse, "profile has fewer than 8 nodes");
  if (!fiber.fiber_chart)
    throw GeometryError(ErrorCode::missing_fiber_chart, "profile_to_chart needs an explicit fiber chart");
  if (fiber.fiber_dim + 1 != p.n)
    throw GeometryError(ErrorCode::invalid_params, "fiber dimension does not match profile dimension");

  auto sp_phi = std::make_shared<QuinticHermite>(p.r, p.phi, p.dphi, p.d2phi);
  auto sp_phi3 = std::make_shared<CubicSpline>(p.r, p.d3phi);
  auto sp_F = std::make_shared<QuinticHermite>(p.r, p.F, p.dF, p.d2F);

  RadialFn phi{[sp_phi](double r) { return sp_phi->eval(r, 0); },
               [sp_phi](double r) { return sp_phi->eval(r, 1); },
               [sp_phi](double r) { return sp_phi->eval(r, 2); },
               [sp_phi3](double r) { return sp_phi3->eval(r); }};
  RadialFn F{[sp_F](double r) { return sp_F->eval(r, 0); },
             [sp_F](double r) { return sp_F->eval(r, 1); },
             [sp_F](double r) { return sp_F->eval(r, 2); },
             [sp_F](double r) { return sp_F->eval(r, 3); }};

  // keep interior evaluation a few cells away from the grid ends
  const size_t m = p.size();
  const double lo = p.r.front() + 3.0 * (p.r[1] - p.r[0]);
  const double hi = p.r.back() - 3.0 * (p.r[m - 1] - p.r[m - 2]);
  if (!(lo < hi)) throw GeometryError(ErrorCode::grid_too_coarse, "profile interior is empty");
  return make_warped_chart(phi, F, *fiber.fiber_chart, lo, hi,
                           "warped[" + fiber.fiber_chart->label + "]");
}

SolitonChart warped_steady_soliton(const WarpedProfile& p, const FiberSpec& fiber) {
  WarpedChart wc = profile_to_chart(p, fiber);
  SolitonChart s = SolitonChart::steady(std::move(wc.chart), std::move(wc.potential_F));
  s.fibration = std::move(wc.fibration);
  return s;
}

}  // namespace riccikit
