// Operator means: geometric, weighted geometric, and generic means evaluated
// through a representing function f as A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "sharpbound/errors.hpp"
#include "sharpbound/hermitian.hpp"

namespace sharpbound {

class MeanSpec {
 public:
  enum class Kind { geometric, weighted_geometric, generic };

  static MeanSpec geometric() {
    MeanSpec s;
    s.kind_ = Kind::geometric;
    s.name_ = "geometric";
    return s;
  }

  static MeanSpec weighted_geometric(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw WeightOutOfRange("weight must lie in [0,1]");
    MeanSpec s;
    s.kind_ = Kind::weighted_geometric;
    s.mu_ = mu;
    std::ostringstream os;
    os << "weighted(" << mu << ")";
    s.name_ = os.str();
    return s;
  }

  // Normalization f(1) = 1 and nondecreasing behaviour are spot-checked at
  // construction; full operator monotonicity is the caller's responsibility.
  static MeanSpec generic(std::function<double(double)> f, std::string name) {
    MeanSpec s;
    s.kind_ = Kind::generic;
    s.f_ = std::move(f);
    s.name_ = std::move(name);
    const double at_one = s.f_(1.0);
    if (!(std::abs(at_one - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os << "representing function must satisfy f(1) = 1, got " << at_one;
      throw RepresentingFunctionDomain(os.str());
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 64; ++i) {
      const double t = 1e-4 * std::pow(1e8, i / 63.0);  // geometric grid on [1e-4, 1e4]
      const double v = s.f_(t);
      if (!std::isfinite(v))
        throw RepresentingFunctionDomain("representing function not finite on sample grid");
      if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
        throw RepresentingFunctionDomain("representing function decreasing on sample grid");
      prev = v;
    }
    return s;
  }

  Kind kind() const { return kind_; }
  double mu() const { return mu_; }
  const std::string& name() const { return name_; }

  /// The representing function t -> f(t) of this mean.
  double eval(double t) const {
    switch (kind_) {
      case Kind::geometric:
        return std::sqrt(t);
      case Kind::weighted_geometric:
        return mu_ == 0.5 ? std::sqrt(t) : std::pow(t, mu_);
      case Kind::generic:
        return f_(t);
    }
    return 0.0;  // unreachable
  }

 private:
  MeanSpec() = default;
  Kind kind_ = Kind::geometric;
  double mu_ = 0.5;
  std::function<double(double)> f_;
  std::string name_ = "geometric";
};

/// Fixed registry of named representing functions.
inline MeanSpec named_mean(const std::string& name, double mu = 0.5) {
  if (name == "arithmetic") return MeanSpec::generic([](double t) { return 0.5 * (1.0 + t); }, "arithmetic");
  if (name == "harmonic") return MeanSpec::generic([](double t) { return 2.0 * t / (1.0 + t); }, "harmonic");
  if (name == "power") return MeanSpec::weighted_geometric(mu);
  if (name == "geometric") return MeanSpec::geometric();
  throw RepresentingFunctionDomain("unknown mean name: " + name);
}

namespace detail {

inline void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mean of matrices with different dimensions");
}

// Spectral square-root pair (A^{1/2}, A^{-1/2}) from one decomposition.
// Throws NotStrictlyPositive below the scale-relative floor.
inline std::pair<HermitianMatrix, HermitianMatrix> sqrt_pair(const HermitianMatrix& a,
                                                             const char* label) {
  const Eigensystem es = eigh(a);
  const double floor = 1e-12 * std::max(1.0, es.eigenvalues.back());
  if (es.eigenvalues.front() <= floor) {
    std::ostringstream os;
    os << label << " is not strictly positive: lambda_min = " << es.eigenvalues.front();
    throw NotStrictlyPositive(os.str());
  }
  std::vector<double> rt(es.eigenvalues.size()), rti(es.eigenvalues.size());
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    rt[i] = std::sqrt(es.eigenvalues[i]);
    rti[i] = 1.0 / rt[i];
  }
  return {assemble_from_eigensystem(es, rt), assemble_from_eigensystem(es, rti)};
}

inline void require_strictly_positive(const HermitianMatrix& a, const char* label) {
  const Eigensystem es = eigh(a);
  const double floor = 1e-12 * std::max(1.0, es.eigenvalues.back());
  if (es.eigenvalues.front() <= floor) {
    std::ostringstream os;
    os << label << " is not strictly positive: lambda_min = " << es.eigenvalues.front();
    throw NotStrictlyPositive(os.str());
  }
}

}  // namespace detail

/// A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for the representing
/// function of `spec`.
inline HermitianMatrix kubo_ando_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const MeanSpec& spec) {
  detail::require_same_dim(a, b);
  detail::require_strictly_positive(b, "B");
  auto [root, root_inv] = detail::sqrt_pair(a, "A");
  const HermitianMatrix middle(root_inv.cm() * b.cm() * root_inv.cm());
  const HermitianMatrix mapped = matfun(middle, [&](double t) { return spec.eval(t); }, 0.0);
  return HermitianMatrix(root.cm() * mapped.cm() * root.cm());
}

inline HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  return kubo_ando_mean(a, b, MeanSpec::geometric());
}

inline HermitianMatrix weighted_geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                                               double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw WeightOutOfRange("weight must lie in [0,1]");
  detail::require_same_dim(a, b);
  // Endpoints are exact by definition.
  if (mu == 0.0) {
    detail::require_strictly_positive(a, "A");
    detail::require_strictly_positive(b, "B");
    return a;
  }
  if (mu == 1.0) {
    detail::require_strictly_positive(a, "A");
    detail::require_strictly_positive(b, "B");
    return b;
  }
  return kubo_ando_mean(a, b, MeanSpec::weighted_geometric(mu));
}

}  // namespace sharpbound
