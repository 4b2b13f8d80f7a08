// Reproducible random theorem instances: matrix pairs inside prescribed
// spectral enclosures plus a random unital map, keyed by (seed, stream).
#pragma once

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "sharpbound/bounds.hpp"
#include "sharpbound/hermitian.hpp"
#include "sharpbound/positive_map.hpp"
#include "sharpbound/rng.hpp"

namespace sharpbound {

struct Instance {
  HermitianMatrix A;
  HermitianMatrix B;
  SpectralBounds bounds;
  PositiveMapSpec map;
  SeedTrace seed_trace;
};

/// Hypothesis block of the squaring theorem for plain squaring:
/// m I <= A <= M I and A <= B.
struct OrderedPair {
  HermitianMatrix A;
  HermitianMatrix B;
  double m = 1.0;
  double M = 1.0;
};

namespace detail {

// U diag(evals) U* with U Haar. evals may touch the interval ends; for
// scalars the conjugation is skipped so endpoint pins stay exact.
inline HermitianMatrix conjugated_diagonal(const std::vector<double>& evals, Rng& rng) {
  const int n = int(evals.size());
  if (n == 1) {
    haar_unitary(1, rng);  // keep the draw count identical across dims
    return HermitianMatrix::diagonal(evals);
  }
  const CMatrix u = haar_unitary(n, rng);
  CMatrix scaled = u;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= evals[j];
  return HermitianMatrix(scaled * u.adjoint());
}

// Eigenvalues uniform in [lo, hi]; each interval end pinned to one eigenvalue
// with probability 1/2, so boundary-tight instances occur often. The
// constants of the theorems are attained at spectral endpoints.
inline std::vector<double> pinned_spectrum(int n, double lo, double hi, Rng& rng) {
  std::vector<double> evals(n);
  for (double& e : evals) e = rng.uniform(lo, hi);
  const bool pin_lo = rng.coin();
  const bool pin_hi = rng.coin();
  if (n == 1) {
    if (pin_lo && pin_hi) evals[0] = rng.coin() ? lo : hi;
    else if (pin_lo) evals[0] = lo;
    else if (pin_hi) evals[0] = hi;
  } else {
    if (pin_lo) evals[0] = lo;
    if (pin_hi) evals[n - 1] = hi;
  }
  return evals;
}

}  // namespace detail

/// Random Hermitian with spectrum inside [lo, hi] by construction.
inline HermitianMatrix random_hermitian_with_spectrum(int n, double lo, double hi, Rng& rng) {
  if (!(0.0 < lo && lo <= hi))
    throw DomainViolation("random_hermitian_with_spectrum needs 0 < lo <= hi");
  if (n < 1) throw DimensionMismatch("dimension must be >= 1");
  return detail::conjugated_diagonal(detail::pinned_spectrum(n, lo, hi, rng), rng);
}

inline Instance random_instance(int n, const SpectralBounds& b, Rng& rng, SeedTrace trace,
                                const MapKindWeights& weights = {}) {
  HermitianMatrix a = random_hermitian_with_spectrum(n, b.m1 * b.m1, b.M1 * b.M1, rng);
  HermitianMatrix bb = random_hermitian_with_spectrum(n, b.m2 * b.m2, b.M2 * b.M2, rng);
  PositiveMapSpec map = random_map(n, rng, weights);
  return Instance{std::move(a), std::move(bb), b, std::move(map), trace};
}

/// Instance at stream `index` of the run keyed by `seed`.
inline Instance make_instance(int n, const SpectralBounds& b, std::uint64_t seed,
                              std::uint64_t index, const MapKindWeights& weights = {}) {
  Rng rng(seed, index);
  return random_instance(n, b, rng, SeedTrace{seed, index}, weights);
}

/// The sharpness witness: commuting diagonals with reversed enclosure ends
/// under the normalized trace. Attains the Diaz-Metcalf constant for every b
/// and the Polya-Szego constant whenever M1/m1 = M2/m2.
inline Instance equality_witness(const SpectralBounds& b) {
  return Instance{HermitianMatrix::diagonal({b.m1 * b.m1, b.M1 * b.M1}),
                  HermitianMatrix::diagonal({b.M2 * b.M2, b.m2 * b.m2}),
                  b,
                  PositiveMapSpec::normalized_trace(2),
                  SeedTrace{0, 0}};
}

/// A with spectrum in [m, M]; B = A + S for a random PSD S of norm <= M.
inline OrderedPair random_ordered_pair(int n, double m, double M, Rng& rng) {
  if (!(0.0 < m && m <= M)) throw DomainViolation("random_ordered_pair needs 0 < m <= M");
  HermitianMatrix a = random_hermitian_with_spectrum(n, m, M, rng);
  const double bump = rng.uniform(0.0, M);
  std::vector<double> increments(n);
  for (double& e : increments) e = rng.uniform(0.0, bump);
  HermitianMatrix s = detail::conjugated_diagonal(increments, rng);
  return OrderedPair{a, a + s, m, M};
}

/// Enclosure margins of an instance; nonnegative (up to tolerance) iff the
/// standing hypotheses hold.
struct EnclosureMargins {
  double a_lower, a_upper, b_lower, b_upper;
  double worst() const { return std::min(std::min(a_lower, a_upper), std::min(b_lower, b_upper)); }
};

inline EnclosureMargins enclosure_margins(const Instance& inst) {
  const auto ea = eigh(inst.A);
  const auto eb = eigh(inst.B);
  const SpectralBounds& b = inst.bounds;
  return {ea.eigenvalues.front() - b.m1 * b.m1, b.M1 * b.M1 - ea.eigenvalues.back(),
          eb.eigenvalues.front() - b.m2 * b.m2, b.M2 * b.M2 - eb.eigenvalues.back()};
}

/// Throws InvariantViolation naming the failed bound and its margin.
inline void require_instance_invariants(const Instance& inst) {
  if (inst.A.dim() != inst.B.dim() || inst.A.dim() != inst.map.domain_dim())
    throw InvariantViolation("instance dimensions are inconsistent");
  const EnclosureMargins m = enclosure_margins(inst);
  const double tol = 1e-10 * std::max(inst.bounds.M1 * inst.bounds.M1, inst.bounds.M2 * inst.bounds.M2);
  const auto fail = [&](const char* which, double margin) {
    std::ostringstream os;
    os << "instance violates " << which << ": margin " << margin << " (tolerance " << -tol << ")";
    throw InvariantViolation(os.str());
  };
  if (m.a_lower < -tol) fail("m1^2 I <= A", m.a_lower);
  if (m.a_upper < -tol) fail("A <= M1^2 I", m.a_upper);
  if (m.b_lower < -tol) fail("m2^2 I <= B", m.b_lower);
  if (m.b_upper < -tol) fail("B <= M2^2 I", m.b_upper);
  if (!check_unital(inst.map).passes) throw InvariantViolation("instance map is not unital");
}

}  // namespace sharpbound
