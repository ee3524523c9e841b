#ifndef NNCERT_TENSOR_HPP
#define NNCERT_TENSOR_HPP

#include <array>
#include <cmath>

namespace nncert {

/// Dense 3x3 tensor with value semantics. Used for velocity gradients and
/// viscous stresses; 1D/2D fields embed into the leading block.
struct Tensor3 {
  std::array<double, 9> a{};
  bool symmetric = false;

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

  static Tensor3 zero() { return {}; }

  static Tensor3 diag(double x, double y, double z) {
    Tensor3 t;
    t(0, 0) = x;
    t(1, 1) = y;
    t(2, 2) = z;
    t.symmetric = true;
    return t;
  }

  Tensor3 transpose() const {
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    t.symmetric = symmetric;
    return t;
  }

  Tensor3 sym() const {
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    t.symmetric = true;
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }

  friend Tensor3 operator+(const Tensor3& x, const Tensor3& y) {
    Tensor3 t;
    for (std::size_t k = 0; k < 9; ++k) t.a[k] = x.a[k] + y.a[k];
    t.symmetric = x.symmetric && y.symmetric;
    return t;
  }
  friend Tensor3 operator-(const Tensor3& x, const Tensor3& y) {
    Tensor3 t;
    for (std::size_t k = 0; k < 9; ++k) t.a[k] = x.a[k] - y.a[k];
    t.symmetric = x.symmetric && y.symmetric;
    return t;
  }
  friend Tensor3 operator*(double s, const Tensor3& x) {
    Tensor3 t;
    for (std::size_t k = 0; k < 9; ++k) t.a[k] = s * x.a[k];
    t.symmetric = x.symmetric;
    return t;
  }
};

/// Double contraction A : B.
inline double ddot(const Tensor3& x, const Tensor3& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += x.a[k] * y.a[k];
  return s;
}

}  // namespace nncert

#endif
