// Unital positive linear maps: identity, compression, pinching, mixtures of
// unitary congruences, normalized trace.
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sharpbound/errors.hpp"
#include "sharpbound/hermitian.hpp"
#include "sharpbound/rng.hpp"

namespace sharpbound {

namespace detail {

// Haar unitary: QR of a complex Gaussian with the R diagonal kept real
// positive (modified Gram-Schmidt, one reorthogonalization pass).
inline CMatrix haar_unitary(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        cdouble proj = 0.0;
        for (int k = 0; k < n; ++k) proj += std::conj(g(k, i)) * g(k, j);
        for (int k = 0; k < n; ++k) g(k, j) -= proj * g(k, i);
      }
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += std::norm(g(k, j));
    norm = std::sqrt(norm);
    for (int k = 0; k < n; ++k) g(k, j) /= norm;
  }
  return g;
}

inline CMatrix orthonormal_columns(int n, int k, Rng& rng) {
  const CMatrix u = haar_unitary(n, rng);
  CMatrix v(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) v(i, j) = u(i, j);
  return v;
}

}  // namespace detail

class PositiveMapSpec {
 public:
  enum class Kind { identity, compression, pinching, unitary_mixture, normalized_trace };

  static PositiveMapSpec identity(int n) {
    PositiveMapSpec s;
    s.kind_ = Kind::identity;
    s.domain_dim_ = s.codomain_dim_ = require_dim(n);
    return s;
  }

  static PositiveMapSpec normalized_trace(int n) {
    PositiveMapSpec s;
    s.kind_ = Kind::normalized_trace;
    s.domain_dim_ = require_dim(n);
    s.codomain_dim_ = 1;
    return s;
  }

  /// Phi(A) = V* A V with V* V = I_k.
  static PositiveMapSpec compression(const CMatrix& v) {
    PositiveMapSpec s;
    s.kind_ = Kind::compression;
    s.domain_dim_ = require_dim(v.rows());
    s.codomain_dim_ = require_dim(v.cols());
    if (v.cols() > v.rows())
      throw DimensionMismatch("compression isometry cannot widen the space");
    const CMatrix gram = v.adjoint() * v;
    const double residual = (gram - CMatrix::identity(v.cols())).frobenius_norm();
    if (residual > 1e-10) {
      std::ostringstream os;
      os << "compression columns not orthonormal: ||V*V - I||_F = " << residual;
      throw InvariantViolation(os.str());
    }
    s.v_ = v;
    return s;
  }

  /// Phi(A) keeps the entries inside each index block and zeroes the rest.
  static PositiveMapSpec pinching(int n, std::vector<std::vector<int>> blocks) {
    PositiveMapSpec s;
    s.kind_ = Kind::pinching;
    s.domain_dim_ = s.codomain_dim_ = require_dim(n);
    std::vector<bool> seen(n, false);
    int covered = 0;
    for (const auto& block : blocks)
      for (int idx : block) {
        if (idx < 0 || idx >= n || seen[idx])
          throw InvariantViolation("pinching blocks must partition the index set");
        seen[idx] = true;
        ++covered;
      }
    if (covered != n) throw InvariantViolation("pinching blocks must cover every index");
    s.blocks_ = std::move(blocks);
    return s;
  }

  static PositiveMapSpec unitary_mixture(std::vector<double> weights, std::vector<CMatrix> unitaries) {
    PositiveMapSpec s;
    s.kind_ = Kind::unitary_mixture;
    if (weights.empty() || weights.size() != unitaries.size())
      throw InvariantViolation("mixture needs matching nonempty weights and unitaries");
    s.domain_dim_ = s.codomain_dim_ = require_dim(unitaries.front().rows());
    double sum = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw InvariantViolation("mixture weights must be positive");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvariantViolation("mixture weights must sum to 1");
    for (const CMatrix& u : unitaries) {
      if (u.rows() != s.domain_dim_ || u.cols() != s.domain_dim_)
        throw DimensionMismatch("mixture unitaries must share the domain dimension");
      const double residual = (u.adjoint() * u - CMatrix::identity(s.domain_dim_)).frobenius_norm();
      if (residual > 1e-10) {
        std::ostringstream os;
        os << "mixture member not unitary: ||U*U - I||_F = " << residual;
        throw InvariantViolation(os.str());
      }
    }
    s.weights_ = std::move(weights);
    s.unitaries_ = std::move(unitaries);
    return s;
  }

  Kind kind() const { return kind_; }
  int domain_dim() const { return domain_dim_; }
  int codomain_dim() const { return codomain_dim_; }
  const CMatrix& isometry() const { return v_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<CMatrix>& unitaries() const { return unitaries_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::identity: return "identity";
      case Kind::compression: return "compression";
      case Kind::pinching: return "pinching";
      case Kind::unitary_mixture: return "mixture";
      case Kind::normalized_trace: return "trace";
    }
    return "?";
  }

 private:
  PositiveMapSpec() = default;
  static int require_dim(int n) {
    if (n < 1) throw DimensionMismatch("map dimension must be >= 1");
    return n;
  }

  Kind kind_ = Kind::identity;
  int domain_dim_ = 1;
  int codomain_dim_ = 1;
  CMatrix v_;
  std::vector<std::vector<int>> blocks_;
  std::vector<double> weights_;
  std::vector<CMatrix> unitaries_;
};

inline HermitianMatrix apply_map(const PositiveMapSpec& spec, const HermitianMatrix& a) {
  if (a.dim() != spec.domain_dim())
    throw DimensionMismatch("map applied to matrix of wrong dimension");
  switch (spec.kind()) {
    case PositiveMapSpec::Kind::identity:
      return a;
    case PositiveMapSpec::Kind::compression:
      return congruence(spec.isometry(), a);
    case PositiveMapSpec::Kind::pinching: {
      CMatrix out(a.dim(), a.dim());
      for (const auto& block : spec.blocks())
        for (int i : block)
          for (int j : block) out(i, j) = a(i, j);
      return HermitianMatrix(out);
    }
    case PositiveMapSpec::Kind::unitary_mixture: {
      CMatrix acc(a.dim(), a.dim());
      for (size_t i = 0; i < spec.weights().size(); ++i)
        acc += cdouble(spec.weights()[i]) * (spec.unitaries()[i].adjoint() * a.cm() * spec.unitaries()[i]);
      return HermitianMatrix(acc);
    }
    case PositiveMapSpec::Kind::normalized_trace: {
      CMatrix out(1, 1);
      out(0, 0) = a.cm().trace().real() / double(a.dim());
      return HermitianMatrix(out);
    }
  }
  throw DomainViolation("unknown map kind");
}

struct UnitalityCheck {
  bool passes = false;
  double residual = 0.0;  // ||Phi(I) - I||_F
};

inline UnitalityCheck check_unital(const PositiveMapSpec& spec) {
  const HermitianMatrix image = apply_map(spec, HermitianMatrix::identity(spec.domain_dim()));
  UnitalityCheck c;
  c.residual = (image.cm() - CMatrix::identity(spec.codomain_dim())).frobenius_norm();
  c.passes = c.residual <= 1e-10 * spec.codomain_dim();
  return c;
}

/// Sampling weights over the five variants, in declaration order
/// {identity, compression, pinching, mixture, trace}.
struct MapKindWeights {
  double identity = 1.0;
  double compression = 1.0;
  double pinching = 1.0;
  double mixture = 1.0;
  double trace = 1.0;
};

/// Random well-formed unital map. At n = 1 only identity and normalized
/// trace are drawn; other variants degenerate there.
inline PositiveMapSpec random_map(int n, Rng& rng, const MapKindWeights& w = {}) {
  double wi = w.identity, wc = w.compression, wp = w.pinching, wm = w.mixture, wt = w.trace;
  if (n == 1) wc = wp = wm = 0.0;
  const double total = wi + wc + wp + wm + wt;
  if (!(total > 0.0)) throw InvariantViolation("map kind weights must not all vanish");
  double pick = rng.uniform01() * total;
  if ((pick -= wi) < 0.0) return PositiveMapSpec::identity(n);
  if ((pick -= wc) < 0.0) {
    const int k = rng.uniform_int(1, n);
    return PositiveMapSpec::compression(detail::orthonormal_columns(n, k, rng));
  }
  if ((pick -= wp) < 0.0) {
    const int nblocks = rng.uniform_int(1, n);
    std::vector<std::vector<int>> blocks(nblocks);
    for (int idx = 0; idx < n; ++idx) blocks[rng.uniform_int(0, nblocks - 1)].push_back(idx);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    return PositiveMapSpec::pinching(n, std::move(blocks));
  }
  if ((pick -= wm) < 0.0) {
    const int count = rng.uniform_int(2, 3);
    std::vector<double> weights(count);
    double sum = 0.0;
    for (double& x : weights) {
      x = 0.05 + rng.uniform01();
      sum += x;
    }
    for (double& x : weights) x /= sum;
    weights.back() = 1.0;
    for (size_t i = 0; i + 1 < weights.size(); ++i) weights.back() -= weights[i];
    std::vector<CMatrix> unitaries;
    unitaries.reserve(count);
    for (int i = 0; i < count; ++i) unitaries.push_back(detail::haar_unitary(n, rng));
    return PositiveMapSpec::unitary_mixture(std::move(weights), std::move(unitaries));
  }
  return PositiveMapSpec::normalized_trace(n);
}

}  // namespace sharpbound
