// Falsification search for the closing conjecture: maximize the observed
// ratio of the squared inequalities over instances, by random restarts plus
// eigenvalue/unitary hill-climbing. The search reports, never asserts.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "sharpbound/bounds.hpp"
#include "sharpbound/instance.hpp"
#include "sharpbound/verify.hpp"

namespace sharpbound {

enum class ConjectureTarget { ps2, dm2 };

inline const char* target_name(ConjectureTarget t) {
  return t == ConjectureTarget::ps2 ? "conjecture_ps2" : "conjecture_dm2";
}

inline ConjectureTarget target_from_name(const std::string& name) {
  if (name == "conjecture_ps2") return ConjectureTarget::ps2;
  if (name == "conjecture_dm2") return ConjectureTarget::dm2;
  throw DomainViolation("unknown falsification target: " + name);
}

/// Conjectured constant of the squared inequality (alpha^2 or dm^2).
inline double conjectured_constant(ConjectureTarget t, const SpectralBounds& b) {
  if (t == ConjectureTarget::ps2) {
    const double a = alpha_polya_szego(b);
    return a * a;
  }
  const double d = dm_constant(b);
  return d * d;
}

/// Proven constant of the squared inequality (beta or K^2).
inline double proven_constant(ConjectureTarget t, const SpectralBounds& b) {
  if (t == ConjectureTarget::ps2) return beta_squared(b);
  const double k = dm_squared_constant(b);
  return k * k;
}

/// Least c with L^2 <= c Phi(A#B)^2 on this instance, L being the target's
/// left-hand side.
inline double target_ratio(ConjectureTarget t, const Instance& inst) {
  const HermitianMatrix c = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  HermitianMatrix l = HermitianMatrix::identity(1);
  if (t == ConjectureTarget::ps2) {
    l = geometric_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B));
  } else {
    const SpectralBounds& b = inst.bounds;
    const double kappa = (b.M2 * b.m2) / (b.M1 * b.m1);
    l = kappa * apply_map(inst.map, inst.A) + apply_map(inst.map, inst.B);
  }
  return optimal_constant(detail::squared(l), detail::squared(c));
}

struct SearchReport {
  ConjectureTarget target = ConjectureTarget::ps2;
  std::uint64_t budget_used = 0;
  double best_ratio = 0.0;
  double conjectured = 0.0;
  double proven = 0.0;
  Instance best_instance;
  std::uint64_t best_eval_index = 0;
  bool violated = false;                  // best_ratio > conjectured + tol
  std::uint64_t backstop_violations = 0;  // evals with ratio > proven + tol (numerical bug)

  explicit SearchReport(Instance placeholder) : best_instance(std::move(placeholder)) {}
};

namespace detail {

// Hill-climb state: spectral factors of A and B plus the map. Rebuilding
// from the factors keeps every visited instance feasible by construction.
struct ClimbState {
  std::vector<double> evals_a, evals_b;
  CMatrix u_a, u_b;
  PositiveMapSpec map;
};

inline CMatrix reunitarize(const CMatrix& m) {
  // QR with positive diagonal via modified Gram-Schmidt (two passes).
  CMatrix g = m;
  const int n = g.rows();
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
    if (norm < 1e-12) {
      for (int k = 0; k < n; ++k) g(k, j) = (k == j) ? 1.0 : 0.0;
    } else {
      for (int k = 0; k < n; ++k) g(k, j) /= norm;
    }
  }
  return g;
}

// Geodesic-ish blend: QR of the convex combination (1-s) U + s V.
inline CMatrix blend_unitary(const CMatrix& u, const CMatrix& v, double s) {
  CMatrix mix = u;
  mix *= cdouble(1.0 - s);
  CMatrix vs = v;
  vs *= cdouble(s);
  mix += vs;
  return reunitarize(mix);
}

// Pull eigenvalues toward a randomly chosen enclosure endpoint.
inline void drift_spectrum(std::vector<double>& evals, double lo, double hi, double step, Rng& rng) {
  for (double& e : evals) {
    const double endpoint = rng.coin() ? lo : hi;
    e = std::clamp(e + step * (endpoint - e) + 0.1 * step * (hi - lo) * (rng.uniform01() - 0.5), lo, hi);
  }
}

inline PositiveMapSpec perturb_map(const PositiveMapSpec& map, double step, Rng& rng) {
  const int n = map.domain_dim();
  switch (map.kind()) {
    case PositiveMapSpec::Kind::identity:
    case PositiveMapSpec::Kind::normalized_trace:
    case PositiveMapSpec::Kind::pinching:
      return map;  // no continuous parameters
    case PositiveMapSpec::Kind::compression: {
      const int k = map.isometry().cols();
      const CMatrix fresh = haar_unitary(n, rng);
      CMatrix wide(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          wide(i, j) = (j < k ? map.isometry()(i, j) * cdouble(1.0 - step) : cdouble(0.0)) +
                       cdouble(step) * fresh(i, j);
      const CMatrix q = reunitarize(wide);
      CMatrix v(n, k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) v(i, j) = q(i, j);
      return PositiveMapSpec::compression(v);
    }
    case PositiveMapSpec::Kind::unitary_mixture: {
      std::vector<double> weights = map.weights();
      double sum = 0.0;
      for (double& w : weights) {
        w = std::max(1e-3, w + step * (rng.uniform01() - 0.5));
        sum += w;
      }
      for (double& w : weights) w /= sum;
      weights.back() = 1.0;
      for (size_t i = 0; i + 1 < weights.size(); ++i) weights.back() -= weights[i];
      std::vector<CMatrix> unitaries;
      unitaries.reserve(map.unitaries().size());
      for (const CMatrix& u : map.unitaries())
        unitaries.push_back(blend_unitary(u, haar_unitary(n, rng), step));
      return PositiveMapSpec::unitary_mixture(std::move(weights), std::move(unitaries));
    }
  }
  return map;
}

inline Instance build_instance(const ClimbState& st, const SpectralBounds& b, SeedTrace trace) {
  CMatrix scaled_a = st.u_a;
  for (int j = 0; j < scaled_a.cols(); ++j)
    for (int i = 0; i < scaled_a.rows(); ++i) scaled_a(i, j) *= st.evals_a[j];
  CMatrix scaled_b = st.u_b;
  for (int j = 0; j < scaled_b.cols(); ++j)
    for (int i = 0; i < scaled_b.rows(); ++i) scaled_b(i, j) *= st.evals_b[j];
  return Instance{HermitianMatrix(scaled_a * st.u_a.adjoint()),
                  HermitianMatrix(scaled_b * st.u_b.adjoint()), b, st.map, trace};
}

}  // namespace detail

/// Restart block length of the falsification search: a fresh random instance
/// every kRestartLength evaluations, hill-climbing in between.
inline constexpr std::uint64_t kRestartLength = 200;

/// Deterministic falsification run. Evaluations are grouped in restart
/// blocks of kRestartLength; block k draws from stream (seed, k), so a budget
/// prefix revisits exactly the same instances and parallel block execution
/// reproduces the sequential result.
inline SearchReport falsify(ConjectureTarget target, const SpectralBounds& b, int n,
                            std::uint64_t budget, std::uint64_t seed, int jobs = 1) {
  if (budget < 1) throw DomainViolation("falsify needs budget >= 1");
  SearchReport rep(equality_witness(b));
  rep.target = target;
  rep.budget_used = budget;
  rep.conjectured = conjectured_constant(target, b);
  rep.proven = proven_constant(target, b);
  rep.best_ratio = -std::numeric_limits<double>::infinity();

  const std::uint64_t blocks = (budget + kRestartLength - 1) / kRestartLength;
  struct BlockResult {
    double best_ratio = -std::numeric_limits<double>::infinity();
    std::uint64_t best_eval = 0;
    Instance best;
    std::uint64_t backstop = 0;
    BlockResult() : best(equality_witness(SpectralBounds())) {}
  };
  std::vector<BlockResult> results(blocks);
  const double backstop_tol = 1e-8 * rep.proven;

  std::atomic<std::uint64_t> cursor{0};
  const auto run_block = [&](std::uint64_t blk) {
    BlockResult res;
    Rng rng(seed, blk);
    const std::uint64_t start = blk * kRestartLength;
    const std::uint64_t steps = std::min(kRestartLength, budget - start);

    Instance inst = random_instance(n, b, rng, SeedTrace{seed, blk});
    const Eigensystem ea = eigh(inst.A);
    const Eigensystem eb = eigh(inst.B);
    detail::ClimbState state{ea.eigenvalues, eb.eigenvalues, ea.eigenvectors, eb.eigenvectors,
                             inst.map};
    double step_size = 0.5;
    int non_improving = 0;
    double current_ratio = 0.0;

    // One target evaluation per budget step: step 0 scores the restart
    // instance, later steps score one hill-climb proposal each.
    for (std::uint64_t i = 0; i < steps; ++i) {
      double ratio;
      if (i == 0) {
        ratio = target_ratio(target, inst);
        current_ratio = ratio;
      } else {
        detail::ClimbState proposal = state;
        detail::drift_spectrum(proposal.evals_a, b.m1 * b.m1, b.M1 * b.M1, step_size, rng);
        detail::drift_spectrum(proposal.evals_b, b.m2 * b.m2, b.M2 * b.M2, step_size, rng);
        proposal.u_a = detail::blend_unitary(proposal.u_a, detail::haar_unitary(n, rng), step_size);
        proposal.u_b = detail::blend_unitary(proposal.u_b, detail::haar_unitary(n, rng), step_size);
        proposal.map = detail::perturb_map(proposal.map, step_size, rng);
        Instance candidate = detail::build_instance(proposal, b, SeedTrace{seed, blk});
        ratio = target_ratio(target, candidate);
        if (ratio > current_ratio) {
          state = std::move(proposal);
          inst = std::move(candidate);
          current_ratio = ratio;
          non_improving = 0;
        } else if (++non_improving % 50 == 0) {
          step_size *= 0.9;  // cooling
        }
      }
      if (ratio > rep.proven + backstop_tol) ++res.backstop;
      // The climb is greedy, so a new overall best is always the state that
      // inst currently holds (the restart at i = 0, or an accepted proposal).
      if (ratio > res.best_ratio) {
        res.best_ratio = ratio;
        res.best = inst;
        res.best_eval = start + i;
      }
    }
    results[blk] = std::move(res);
  };

  const auto worker = [&]() {
    for (;;) {
      const std::uint64_t blk = cursor.fetch_add(1);
      if (blk >= blocks) return;
      run_block(blk);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Associative reduction: max ratio, ties resolved toward the earliest eval.
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    const BlockResult& res = results[blk];
    rep.backstop_violations += res.backstop;
    if (res.best_ratio > rep.best_ratio ||
        (res.best_ratio == rep.best_ratio && res.best_eval < rep.best_eval_index)) {
      rep.best_ratio = res.best_ratio;
      rep.best_instance = res.best;
      rep.best_eval_index = res.best_eval;
    }
  }
  rep.violated = rep.best_ratio > rep.conjectured * (1.0 + 1e-8);
  return rep;
}

/// Brute-force scalar oracle: two-atom diagonal configurations with
/// endpoint-valued atoms under a weighted-average map, dense weight grid
/// plus golden-section refinement. For the Polya-Szego target the maximum is
/// exactly alpha^2; for the Diaz-Metcalf target exactly dm^2.
inline double scalar_best_ratio(ConjectureTarget target, const SpectralBounds& b,
                                int weight_grid = 4096) {
  const double atoms_a[2] = {b.m1 * b.m1, b.M1 * b.M1};
  const double atoms_b[2] = {b.m2 * b.m2, b.M2 * b.M2};
  const double kappa = (b.M2 * b.m2) / (b.M1 * b.m1);
  double best = 0.0;
  for (double a1 : atoms_a)
    for (double a2 : atoms_a)
      for (double b1 : atoms_b)
        for (double b2 : atoms_b) {
          const auto ratio = [&](double w) {
            const double x = w * a1 + (1.0 - w) * a2;   // Phi(A)
            const double y = w * b1 + (1.0 - w) * b2;   // Phi(B)
            const double z = w * std::sqrt(a1 * b1) + (1.0 - w) * std::sqrt(a2 * b2);  // Phi(A#B)
            if (target == ConjectureTarget::ps2) return (x * y) / (z * z);
            const double l = kappa * x + y;
            return (l * l) / (z * z);
          };
          int best_idx = 0;
          double grid_best = 0.0;
          for (int i = 0; i <= weight_grid; ++i) {
            const double v = ratio(double(i) / weight_grid);
            if (v > grid_best) {
              grid_best = v;
              best_idx = i;
            }
          }
          const double lo = double(std::max(0, best_idx - 1)) / weight_grid;
          const double hi = double(std::min(weight_grid, best_idx + 1)) / weight_grid;
          best = std::max(best, std::max(grid_best, detail::golden_max(ratio, lo, hi, 1e-14)));
        }
  return best;
}

struct SweepRow {
  double ratio1 = 1.0;  // spectrum ratio M1^2/m1^2 of A
  double ratio2 = 1.0;  // spectrum ratio M2^2/m2^2 of B
  double alpha_sq = 1.0;
  double beta = 1.0;
  double best_ps2 = 1.0;
  double dm_sq = 1.0;
  double k_sq = 1.0;
  double best_dm2 = 1.0;
};

/// One falsification run per target per grid cell. Cell (r1, r2) uses bounds
/// (1, sqrt(r1), 1, sqrt(r2)), i.e. the entries are the spectral-enclosure
/// ratios of A and B themselves.
inline std::vector<SweepRow> sweep(const std::vector<std::pair<double, double>>& ratio_grid, int n,
                                   std::uint64_t per_cell_budget, std::uint64_t seed, int jobs = 1) {
  std::vector<SweepRow> rows;
  rows.reserve(ratio_grid.size());
  std::uint64_t cell = 0;
  for (const auto& [r1, r2] : ratio_grid) {
    if (!(r1 >= 1.0 && r2 >= 1.0)) throw DomainViolation("sweep ratios must be >= 1");
    const SpectralBounds b(1.0, std::sqrt(r1), 1.0, std::sqrt(r2));
    SweepRow row;
    row.ratio1 = r1;
    row.ratio2 = r2;
    const double alpha = alpha_polya_szego(b);
    row.alpha_sq = alpha * alpha;
    row.beta = beta_squared(b);
    const double dm = dm_constant(b);
    row.dm_sq = dm * dm;
    const double k = dm_squared_constant(b);
    row.k_sq = k * k;
    // Disjoint seed streams per cell and target.
    row.best_ps2 = falsify(ConjectureTarget::ps2, b, n, per_cell_budget, seed + 2 * cell, jobs).best_ratio;
    row.best_dm2 = falsify(ConjectureTarget::dm2, b, n, per_cell_budget, seed + 2 * cell + 1, jobs).best_ratio;
    rows.push_back(row);
    ++cell;
  }
  return rows;
}

}  // namespace sharpbound
