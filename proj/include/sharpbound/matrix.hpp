// Dense complex matrix arithmetic. Row-major, desk scale (n <= 64).
#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "sharpbound/errors.hpp"

namespace sharpbound {

using cdouble = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("matrix dimensions must be nonnegative");
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const cdouble& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  CMatrix adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cdouble trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cdouble& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs_entry() const {
    double m = 0.0;
    for (const cdouble& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  CMatrix& operator*=(cdouble s) {
    for (cdouble& v : a_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cdouble s) { return a *= s; }
  friend CMatrix operator*(cdouble s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    CMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const cdouble aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  bool operator==(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  void require_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes differ");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cdouble> a_;
};

}  // namespace sharpbound
