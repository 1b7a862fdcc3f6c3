#pragma once
#include <Eigen/Dense>
#include <cassert>
#include <vector>

namespace riccikit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3/4/5 tensors over a single small dimension n (coordinate
// indices). Storage is row-major flat; components are plain doubles.
class Tensor3 {
public:
  Tensor3() : n_(0) {}
  explicit Tensor3(int n) : n_(n), v_(static_cast<size_t>(n) * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return v_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const { return v_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  Tensor3& operator+=(const Tensor3& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

private:
  int n_;
  std::vector<double> v_;
};

class Tensor4 {
public:
  Tensor4() : n_(0) {}
  explicit Tensor4(int n) : n_(n), v_(static_cast<size_t>(n) * n * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) {
    return v_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return v_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  Tensor4& operator+=(const Tensor4& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

private:
  int n_;
  std::vector<double> v_;
};

class Tensor5 {
public:
  Tensor5() : n_(0) {}
  explicit Tensor5(int n) : n_(n), v_(static_cast<size_t>(n) * n * n * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l, int m) {
    return v_[(((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l) * n_ + m];
  }
  double operator()(int i, int j, int k, int l, int m) const {
    return v_[(((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l) * n_ + m];
  }
  Tensor5& operator+=(const Tensor5& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Tensor5& operator-=(const Tensor5& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Tensor5& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }
  friend Tensor5 operator+(Tensor5 a, const Tensor5& b) { return a += b; }
  friend Tensor5 operator-(Tensor5 a, const Tensor5& b) { return a -= b; }
  friend Tensor5 operator*(double s, Tensor5 a) { return a *= s; }

private:
  int n_;
  std::vector<double> v_;
};

// ---- metric norms: all indices contracted with ginv ----

inline double g_norm2(const Mat& t, const Mat& ginv) {
  // |T|^2 = g^{ik} g^{jl} T_ij T_kl for a (0,2)-tensor
  const Mat raised = ginv * t * ginv;
  double s = 0.0;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) s += t(i, j) * raised(i, j);
  return std::sqrt(std::max(0.0, s));
}

inline double g_norm3(const Tensor3& t, const Mat& ginv) {
  const int n = t.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double raised = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) raised += ginv(i, a) * ginv(j, b) * ginv(k, c) * t(a, b, c);
        s += t(i, j, k) * raised;
      }
  return std::sqrt(std::max(0.0, s));
}

inline double g_norm4(const Tensor4& t, const Mat& ginv) {
  const int n = t.dim();
  // contract one index at a time to keep this O(n^5)
  Tensor4 u(n), w(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int i = 0; i < n; ++i) acc += ginv(a, i) * t(i, j, k, l);
          u(a, j, k, l) = acc;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int j = 0; j < n; ++j) acc += ginv(b, j) * u(a, j, k, l);
          w(a, b, k, l) = acc;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int k = 0; k < n; ++k) acc += ginv(c, k) * w(a, b, k, l);
          u(a, b, c, l) = acc;
        }
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += ginv(d, l) * u(a, b, c, l);
          s += acc * t(a, b, c, d);
        }
  return std::sqrt(std::max(0.0, s));
}

inline double g_norm_vec(const Vec& v, const Mat& g) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

}  // namespace riccikit
