// Hermitian matrices, eigendecomposition, spectral calculus, Loewner order.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sharpbound/errors.hpp"
#include "sharpbound/matrix.hpp"

namespace sharpbound {

/// Dense complex Hermitian matrix. Construction rejects inputs whose
/// deviation from A = A* exceeds 1e-12 * max|entry| and then symmetrizes
/// exactly, so stored entries always satisfy a(i,j) == conj(a(j,i)).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m) : m_(check_and_symmetrize(m)) {}

  static HermitianMatrix identity(int n) { return HermitianMatrix(CMatrix::identity(n)); }
  static HermitianMatrix zero(int n) { return HermitianMatrix(CMatrix(n, n)); }
  static HermitianMatrix diagonal(const std::vector<double>& d) {
    CMatrix m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return HermitianMatrix(m);
  }

  int dim() const { return m_.rows(); }
  const cdouble& operator()(int i, int j) const { return m_(i, j); }
  const CMatrix& cm() const { return m_; }

  double frobenius_norm() const { return m_.frobenius_norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ - b.m_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(a.m_ * cdouble(s));
  }

  bool operator==(const HermitianMatrix& o) const { return m_ == o.m_; }

 private:
  static CMatrix check_and_symmetrize(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian matrix must be square");
    if (m.rows() < 1) throw DimensionMismatch("Hermitian matrix needs dim >= 1");
    double dev = 0.0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i; j < m.cols(); ++j)
        dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    if (dev > 1e-12 * std::max(1e-300, m.max_abs_entry())) {
      std::ostringstream os;
      os << "matrix is not Hermitian: max deviation " << dev;
      throw DomainViolation(os.str());
    }
    CMatrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
      s(i, i) = m(i, i).real();
      for (int j = i + 1; j < m.cols(); ++j) {
        const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        s(i, j) = v;
        s(j, i) = std::conj(v);
      }
    }
    return s;
  }

  CMatrix m_;
};

struct Eigensystem {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, matching order
};

struct OrderVerdict {
  bool holds = false;
  double margin = 0.0;  // lambda_min(R - L)
  double tolerance_used = 0.0;
};

namespace detail {

// One cyclic Jacobi rotation zeroing H(p,q). H stays Hermitian, V accumulates
// the applied unitary (V <- V U).
inline void jacobi_rotate(CMatrix& h, CMatrix& v, int p, int q) {
  const cdouble apq = h(p, q);
  const double g = std::abs(apq);
  if (g < 1e-300) {
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    return;
  }
  const double app = h(p, p).real();
  const double aqq = h(q, q).real();
  const cdouble w = std::conj(apq) / g;  // phase making the pivot real

  const double tau = (aqq - app) / (2.0 * g);
  double t;
  if (std::isinf(tau)) {
    t = 0.0;
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = h.rows();
  // Columns (p,q) of the 2x2 unitary: [c, s; -s*w, c*w].
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const cdouble hkp = h(k, p);
    const cdouble hkq = h(k, q);
    h(k, p) = c * hkp - s * (w * hkq);
    h(k, q) = s * hkp + c * (w * hkq);
    h(p, k) = std::conj(h(k, p));
    h(q, k) = std::conj(h(k, q));
  }
  h(p, p) = c * c * app - 2.0 * c * s * g + s * s * aqq;
  h(q, q) = s * s * app + 2.0 * c * s * g + c * c * aqq;
  h(p, q) = 0.0;
  h(q, p) = 0.0;

  for (int k = 0; k < n; ++k) {
    const cdouble vkp = v(k, p);
    const cdouble vkq = v(k, q);
    v(k, p) = c * vkp - s * (w * vkq);
    v(k, q) = s * vkp + c * (w * vkq);
  }
}

inline double offdiagonal_mass(const CMatrix& h) {
  double s = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = i + 1; j < h.cols(); ++j) s += std::norm(h(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace detail

/// Full eigendecomposition by cyclic Jacobi rotations. Converged when the
/// off-diagonal Frobenius mass drops to 1e-14 * ||A||_F; budget 40 sweeps.
inline Eigensystem eigh(const HermitianMatrix& a) {
  const int n = a.dim();
  CMatrix h = a.cm();
  CMatrix v = CMatrix::identity(n);
  const double fro = h.frobenius_norm();
  const double threshold = 1e-14 * fro;

  bool converged = detail::offdiagonal_mass(h) <= threshold;
  for (int sweep = 0; sweep < 40 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(h, v, p, q);
    converged = detail::offdiagonal_mass(h) <= threshold;
  }
  if (!converged) throw NonConvergence("Jacobi eigensolver exceeded 40 sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return h(i, i).real() < h(j, j).real(); });

  Eigensystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    es.eigenvalues[j] = h(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) es.eigenvectors(i, j) = v(i, order[j]);
  }
  return es;
}

/// Rebuild Q f(Lambda) Q* from a decomposition.
inline HermitianMatrix assemble_from_eigensystem(const Eigensystem& es,
                                                 const std::vector<double>& values) {
  const int n = int(es.eigenvalues.size());
  CMatrix scaled = es.eigenvectors;  // Q diag(values)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= values[j];
  return HermitianMatrix(scaled * es.eigenvectors.adjoint());
}

/// Spectral calculus: Q f(Lambda) Q*. Rejects eigenvalues below domain_floor.
template <class F>
HermitianMatrix matfun(const HermitianMatrix& a, F&& f, double domain_floor) {
  const Eigensystem es = eigh(a);
  std::vector<double> mapped(es.eigenvalues.size());
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    const double lam = es.eigenvalues[i];
    if (lam < domain_floor) {
      std::ostringstream os;
      os << "eigenvalue " << lam << " below domain floor " << domain_floor;
      throw DomainViolation(os.str());
    }
    mapped[i] = f(lam);
    if (!std::isfinite(mapped[i])) {
      std::ostringstream os;
      os << "function value not finite at eigenvalue " << lam;
      throw RepresentingFunctionDomain(os.str());
    }
  }
  return assemble_from_eigensystem(es, mapped);
}

inline double lambda_min(const HermitianMatrix& a) { return eigh(a).eigenvalues.front(); }
inline double lambda_max(const HermitianMatrix& a) { return eigh(a).eigenvalues.back(); }

/// Operator norm of a Hermitian matrix: max |eigenvalue|.
inline double operator_norm(const HermitianMatrix& a) {
  const Eigensystem es = eigh(a);
  return std::max(std::abs(es.eigenvalues.front()), std::abs(es.eigenvalues.back()));
}

/// Operator norm of an arbitrary square matrix: sqrt(lambda_max(X* X)).
inline double operator_norm(const CMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("operator_norm expects a square matrix");
  const HermitianMatrix gram(x.adjoint() * x);
  return std::sqrt(std::max(0.0, lambda_max(gram)));
}

/// Scale-relative default tolerance for Loewner comparisons.
inline double default_order_tolerance(const HermitianMatrix& l, const HermitianMatrix& r) {
  return 1e-9 * std::max(1.0, operator_norm(l) + operator_norm(r));
}

inline OrderVerdict loewner_leq(const HermitianMatrix& l, const HermitianMatrix& r, double tol) {
  if (l.dim() != r.dim()) throw DimensionMismatch("Loewner comparison needs equal dimensions");
  OrderVerdict v;
  v.margin = lambda_min(r - l);
  v.tolerance_used = tol;
  v.holds = v.margin >= -tol;
  return v;
}

inline OrderVerdict loewner_leq(const HermitianMatrix& l, const HermitianMatrix& r) {
  return loewner_leq(l, r, default_order_tolerance(l, r));
}

/// Floor below which a matrix no longer counts as strictly positive.
inline double positivity_floor(const HermitianMatrix& a) {
  return 1e-12 * std::max(1.0, lambda_max(a));
}

/// Least c with L <= c R, i.e. lambda_max(R^{-1/2} L R^{-1/2}).
inline double optimal_constant(const HermitianMatrix& l, const HermitianMatrix& r, double floor) {
  if (l.dim() != r.dim()) throw DimensionMismatch("optimal_constant needs equal dimensions");
  const Eigensystem es = eigh(r);
  if (es.eigenvalues.front() <= floor) {
    std::ostringstream os;
    os << "optimal_constant: lambda_min(R) = " << es.eigenvalues.front()
       << " at or below floor " << floor;
    throw NotStrictlyPositive(os.str());
  }
  std::vector<double> inv_sqrt(es.eigenvalues.size());
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(es.eigenvalues[i]);
  const HermitianMatrix rhalf_inv = assemble_from_eigensystem(es, inv_sqrt);
  const HermitianMatrix mid(rhalf_inv.cm() * l.cm() * rhalf_inv.cm());
  return std::max(0.0, lambda_max(mid));
}

inline double optimal_constant(const HermitianMatrix& l, const HermitianMatrix& r) {
  return optimal_constant(l, r, positivity_floor(r));
}

/// X* A X for Hermitian A (result Hermitian by construction).
inline HermitianMatrix congruence(const CMatrix& x, const HermitianMatrix& a) {
  return HermitianMatrix(x.adjoint() * a.cm() * x);
}

}  // namespace sharpbound
