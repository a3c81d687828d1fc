#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "lincvx/error.hpp"

namespace lincvx {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 4;

// A point (or vector) of C^n, n <= 4. The real view is the interleaved
// sequence (x1, y1, ..., xn, yn) with z_j = x_j + i y_j.
//
// Real 2n-vectors such as gradients are stored in the same packing, so the
// Euclidean inner product of R^{2n} is Re(herm(u, v)).
class CPoint {
 public:
  CPoint() = default;

  explicit CPoint(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxDim) {
      throw Error(ErrorCode::wrong_dimension, "dimension must be in [1, 4], got " + std::to_string(n));
    }
  }

  CPoint(std::initializer_list<Complex> coords) : CPoint(coords.size()) {
    std::size_t j = 0;
    for (const Complex& c : coords) z_[j++] = c;
  }

  static CPoint from_reals(std::span<const double> reals) {
    if (reals.size() % 2 != 0) {
      throw Error(ErrorCode::wrong_dimension, "real coordinate count must be even");
    }
    CPoint p(reals.size() / 2);
    for (std::size_t j = 0; j < p.n_; ++j) p.z_[j] = {reals[2 * j], reals[2 * j + 1]};
    return p;
  }

  static CPoint unit(std::size_t n, std::size_t j) {
    CPoint p(n);
    p.z_[j] = 1.0;
    return p;
  }

  std::size_t dim() const { return n_; }
  std::size_t real_dim() const { return 2 * n_; }

  Complex operator[](std::size_t j) const { return z_[j]; }
  Complex& operator[](std::size_t j) { return z_[j]; }

  double real_at(std::size_t k) const { return k % 2 == 0 ? z_[k / 2].real() : z_[k / 2].imag(); }
  void set_real(std::size_t k, double v) {
    if (k % 2 == 0) {
      z_[k / 2].real(v);
    } else {
      z_[k / 2].imag(v);
    }
  }

  std::vector<double> reals() const {
    std::vector<double> out(2 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      out[2 * j] = z_[j].real();
      out[2 * j + 1] = z_[j].imag();
    }
    return out;
  }

  bool is_finite() const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(z_[j].real()) || !std::isfinite(z_[j].imag())) return false;
    }
    return true;
  }

  double norm_sq() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += z_[j].real() * z_[j].real() + z_[j].imag() * z_[j].imag();
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  CPoint& operator+=(const CPoint& o) {
    check_same(o);
    for (std::size_t j = 0; j < n_; ++j) z_[j] += o.z_[j];
    return *this;
  }
  CPoint& operator-=(const CPoint& o) {
    check_same(o);
    for (std::size_t j = 0; j < n_; ++j) z_[j] -= o.z_[j];
    return *this;
  }
  CPoint& operator*=(Complex s) {
    for (std::size_t j = 0; j < n_; ++j) z_[j] *= s;
    return *this;
  }
  CPoint& operator*=(double s) {
    for (std::size_t j = 0; j < n_; ++j) z_[j] *= s;
    return *this;
  }

  friend CPoint operator+(CPoint a, const CPoint& b) { return a += b; }
  friend CPoint operator-(CPoint a, const CPoint& b) { return a -= b; }
  friend CPoint operator-(CPoint a) { return a *= -1.0; }
  friend CPoint operator*(Complex s, CPoint a) { return a *= s; }
  friend CPoint operator*(double s, CPoint a) { return a *= s; }
  friend CPoint operator*(CPoint a, double s) { return a *= s; }
  friend CPoint operator/(CPoint a, double s) { return a *= 1.0 / s; }

  friend bool operator==(const CPoint& a, const CPoint& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t j = 0; j < a.n_; ++j) {
      if (a.z_[j] != b.z_[j]) return false;
    }
    return true;
  }

  void check_same(const CPoint& o) const {
    if (o.n_ != n_) {
      throw Error(ErrorCode::wrong_dimension,
                  "dimension mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    }
  }

 private:
  std::size_t n_ = 0;
  std::array<Complex, kMaxDim> z_{};
};

// Hermitian product sum_j u_j conj(v_j).
inline Complex herm(const CPoint& u, const CPoint& v) {
  u.check_same(v);
  Complex s = 0.0;
  for (std::size_t j = 0; j < u.dim(); ++j) s += u[j] * std::conj(v[j]);
  return s;
}

// Bilinear pairing sum_j u_j v_j, the incidence pairing of {a . z = 1}.
inline Complex bilinear(const CPoint& u, const CPoint& v) {
  u.check_same(v);
  Complex s = 0.0;
  for (std::size_t j = 0; j < u.dim(); ++j) s += u[j] * v[j];
  return s;
}

// Euclidean inner product of the underlying real vectors.
inline double real_dot(const CPoint& u, const CPoint& v) { return herm(u, v).real(); }

inline CPoint conj(CPoint u) {
  for (std::size_t j = 0; j < u.dim(); ++j) u[j] = std::conj(u[j]);
  return u;
}

inline double distance(const CPoint& a, const CPoint& b) { return (a - b).norm(); }

std::string to_string(const CPoint& p);

// A nonzero complex direction X in C^n.
class CDirection {
 public:
  explicit CDirection(CPoint v) : v_(std::move(v)) {
    if (!(v_.norm() > 0.0) || !v_.is_finite()) {
      throw Error(ErrorCode::invalid_direction, "direction must be finite and nonzero");
    }
  }

  const CPoint& vector() const { return v_; }
  std::size_t dim() const { return v_.dim(); }
  double norm() const { return v_.norm(); }
  CDirection normalized() const { return CDirection(v_ / v_.norm()); }

 private:
  CPoint v_;
};

}  // namespace lincvx
