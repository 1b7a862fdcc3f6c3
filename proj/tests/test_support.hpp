#pragma once
#include <memory>
#include <random>

#include "riccikit/catalog.hpp"

// shared helpers for the unit suites
namespace testsup {

using namespace riccikit;

inline std::vector<Vec> sample_points(const CoordinateChart& c, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(c.domain.sample(rng));
  return pts;
}

// strips the analytic derivative evaluators so every jet level comes from
// central differences of the metric values
inline CoordinateChart fd_backend(CoordinateChart c) {
  c.dmetric = nullptr;
  c.d2metric = nullptr;
  c.d3metric = nullptr;
  return c;
}

inline double max_entry_gap4(const Tensor4& a, const Tensor4& b) {
  Tensor4 d = a;
  d -= b;
  return d.max_abs();
}

inline double max_entry_gap3(const Tensor3& a, const Tensor3& b) {
  Tensor3 d = a;
  d -= b;
  return d.max_abs();
}

// Random analytic metric g = delta + sum_m A_m sin(k_m . x + c_m) with small
// amplitudes: SPD on the box, anisotropic, nothing vanishes identically.
// Derivatives through order three are exact chain rules, so these charts
// drive the full recurrence stack on generic input.
inline CoordinateChart random_trig_chart(int n, std::mt19937_64& rng, int waves = 3,
                                         double amplitude = 0.04) {
  struct Wave {
    Mat A;
    Vec k;
    double c;
  };
  auto waves_vec = std::make_shared<std::vector<Wave>>();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int m = 0; m < waves; ++m) {
    Wave w;
    Mat B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = u(rng);
    w.A = amplitude * 0.5 * (B + B.transpose());
    w.k = Vec(n);
    for (int i = 0; i < n; ++i) w.k[i] = std::round(2.0 * u(rng));
    if (w.k.norm() == 0.0) w.k[0] = 1.0;
    w.c = u(rng) * M_PI;
    waves_vec->push_back(w);
  }
  CoordinateChart c;
  c.dim = n;
  c.domain.lo = Vec::Constant(n, -2.0);
  c.domain.hi = Vec::Constant(n, 2.0);
  c.domain.margin = 0.0;
  c.max_order = 3;
  c.label = "random_trig" + std::to_string(n);
  c.metric = [waves_vec, n](const Vec& x) {
    Mat g = Mat::Identity(n, n);
    for (const auto& w : *waves_vec) g += std::sin(w.k.dot(x) + w.c) * w.A;
    return g;
  };
  c.dmetric = [waves_vec, n](const Vec& x) {
    Tensor3 t(n);
    for (const auto& w : *waves_vec) {
      const double cs = std::cos(w.k.dot(x) + w.c);
      for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) t(p, i, j) += cs * w.k[p] * w.A(i, j);
    }
    return t;
  };
  c.d2metric = [waves_vec, n](const Vec& x) {
    Tensor4 t(n);
    for (const auto& w : *waves_vec) {
      const double sn = -std::sin(w.k.dot(x) + w.c);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(p, q, i, j) += sn * w.k[p] * w.k[q] * w.A(i, j);
    }
    return t;
  };
  c.d3metric = [waves_vec, n](const Vec& x) {
    Tensor5 t(n);
    for (const auto& w : *waves_vec) {
      const double cs = -std::cos(w.k.dot(x) + w.c);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j)
                t(p, q, r, i, j) += cs * w.k[p] * w.k[q] * w.k[r] * w.A(i, j);
    }
    return t;
  };
  return c;
}

inline PotentialEval random_trig_potential(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto k = std::make_shared<Vec>(n);
  for (int i = 0; i < n; ++i) (*k)[i] = std::round(2.0 * u(rng));
  if (k->norm() == 0.0) (*k)[0] = 1.0;
  const double a = 0.5 * u(rng), c = u(rng);
  PotentialEval p;
  p.value = [k, a, c](const Vec& x) { return a * std::sin(k->dot(x) + c); };
  p.grad = [k, a, c](const Vec& x) { return Vec(a * std::cos(k->dot(x) + c) * (*k)); };
  p.hess = [k, a, c](const Vec& x) {
    return Mat(-a * std::sin(k->dot(x) + c) * (*k) * k->transpose());
  };
  return p;
}

}  // namespace testsup
