// One checker per theorem or lemma. Each evaluates the claimed Loewner
// comparison on a concrete instance and reports the eigen-margin, the
// theorem constant, and the instance-optimal constant.
#pragma once

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sharpbound/bounds.hpp"
#include "sharpbound/instance.hpp"
#include "sharpbound/means.hpp"
#include "sharpbound/positive_map.hpp"

namespace sharpbound {

struct InequalityReport {
  std::string check_name;
  bool holds = false;
  double margin = 0.0;            // lambda_min(c R - L) in the theorem direction
  double theorem_constant = 0.0;  // c
  double optimal_constant = 0.0;  // least c' with L <= c' R
  double slack = 0.0;             // theorem_constant - optimal_constant
  SeedTrace instance_id;
};

namespace detail {

inline HermitianMatrix squared(const HermitianMatrix& h) {
  return HermitianMatrix(h.cm() * h.cm());
}

inline HermitianMatrix inverse(const HermitianMatrix& h) {
  const Eigensystem es = eigh(h);
  const double floor = 1e-12 * std::max(1.0, es.eigenvalues.back());
  if (es.eigenvalues.front() <= floor)
    throw NotStrictlyPositive("inverse of a matrix that is not strictly positive");
  std::vector<double> inv(es.eigenvalues.size());
  for (size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / es.eigenvalues[i];
  return assemble_from_eigensystem(es, inv);
}

// Standard report for L <= c R with strictly positive R.
inline InequalityReport order_report(std::string name, const HermitianMatrix& l,
                                     const HermitianMatrix& r, double c, SeedTrace id,
                                     double tol_override = -1.0) {
  InequalityReport rep;
  rep.check_name = std::move(name);
  rep.theorem_constant = c;
  rep.instance_id = id;
  const double tol = tol_override >= 0.0
                         ? tol_override
                         : 1e-9 * std::max(1.0, operator_norm(l) + std::abs(c) * operator_norm(r));
  rep.margin = lambda_min(c * r - l);
  rep.holds = rep.margin >= -tol;
  rep.optimal_constant = optimal_constant(l, r);
  rep.slack = rep.theorem_constant - rep.optimal_constant;
  return rep;
}

}  // namespace detail

/// Ando: Phi(A sigma B) <= Phi(A) sigma Phi(B).
inline InequalityReport check_ando(const Instance& inst, const MeanSpec& mean,
                                   double tol_override = -1.0) {
  const HermitianMatrix l = apply_map(inst.map, kubo_ando_mean(inst.A, inst.B, mean));
  const HermitianMatrix r =
      kubo_ando_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B), mean);
  return detail::order_report("ando", l, r, 1.0, inst.seed_trace, tol_override);
}

/// Polya-Szego: Phi(A) # Phi(B) <= alpha Phi(A # B).
inline InequalityReport check_polya_szego(const Instance& inst, double tol_override = -1.0) {
  const HermitianMatrix l = geometric_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B));
  const HermitianMatrix r = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  return detail::order_report("polya_szego", l, r, alpha_polya_szego(inst.bounds), inst.seed_trace,
                              tol_override);
}

/// Squared Polya-Szego: (Phi(A) # Phi(B))^2 <= beta Phi(A # B)^2. When the
/// first branch of beta is active this is literally the alpha^4 corollary.
/// optimal_constant equals ||D C^{-1}||^2, the norm diagnostic of the proof
/// route through C^{-1} D^2 C^{-1}; the stated conclusion is what is tested.
inline InequalityReport check_squared_ps(const Instance& inst, double tol_override = -1.0) {
  const HermitianMatrix d = geometric_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B));
  const HermitianMatrix c = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  return detail::order_report("squared_ps", detail::squared(d), detail::squared(c),
                              beta_squared(inst.bounds), inst.seed_trace, tol_override);
}

/// General-mean Polya-Szego (alpha from the chord maximization).
inline InequalityReport check_general_mean(const Instance& inst, const MeanSpec& mean,
                                           double tol_override = -1.0) {
  const HermitianMatrix l =
      kubo_ando_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B), mean);
  const HermitianMatrix r = apply_map(inst.map, kubo_ando_mean(inst.A, inst.B, mean));
  return detail::order_report("general_mean", l, r, alpha_general(mean, inst.bounds),
                              inst.seed_trace, tol_override);
}

/// Squared general-mean inequality with the general beta.
inline InequalityReport check_general_squared(const Instance& inst, const MeanSpec& mean,
                                              double tol_override = -1.0) {
  const HermitianMatrix l =
      kubo_ando_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B), mean);
  const HermitianMatrix r = apply_map(inst.map, kubo_ando_mean(inst.A, inst.B, mean));
  const double alpha = alpha_general(mean, inst.bounds);
  return detail::order_report("general_squared", detail::squared(l), detail::squared(r),
                              beta_general(mean, inst.bounds, alpha), inst.seed_trace, tol_override);
}

/// Gruss-type difference bound: lambda_max((Phi(A)#Phi(B))^2 - Phi(A#B)^2)
/// <= (beta - 1) M1^2 M2^2. L may be indefinite, so the margin degenerates
/// to c - lambda_max(L) and the optimal constant to lambda_max(L).
inline InequalityReport check_gruss(const Instance& inst, double tol_override = -1.0) {
  const HermitianMatrix d = geometric_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B));
  const HermitianMatrix c = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  const HermitianMatrix diff = detail::squared(d) - detail::squared(c);
  const double bound = gruss_bound(inst.bounds);
  InequalityReport rep;
  rep.check_name = "gruss";
  rep.theorem_constant = bound;
  rep.instance_id = inst.seed_trace;
  rep.optimal_constant = lambda_max(diff);
  rep.margin = bound - rep.optimal_constant;
  rep.slack = rep.margin;
  const double tol =
      tol_override >= 0.0 ? tol_override : 1e-9 * std::max(1.0, operator_norm(diff) + bound);
  rep.holds = rep.margin >= -tol;
  return rep;
}

/// Diaz-Metcalf: (M2 m2 / M1 m1) Phi(A) + Phi(B) <= (M2/m1 + m2/M1) Phi(A#B).
inline InequalityReport check_dm(const Instance& inst, double tol_override = -1.0) {
  const SpectralBounds& b = inst.bounds;
  const double kappa = (b.M2 * b.m2) / (b.M1 * b.m1);
  const HermitianMatrix l = kappa * apply_map(inst.map, inst.A) + apply_map(inst.map, inst.B);
  const HermitianMatrix r = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  return detail::order_report("dm", l, r, dm_constant(b), inst.seed_trace, tol_override);
}

/// Squared Diaz-Metcalf plus the three proof-chain steps, each its own
/// report. A failing final inequality with intact chain steps localizes a
/// numerical problem rather than a mathematical one.
inline std::vector<InequalityReport> check_dm_squared(const Instance& inst,
                                                      double tol_override = -1.0) {
  const SpectralBounds& b = inst.bounds;
  const double kappa = (b.M2 * b.m2) / (b.M1 * b.m1);
  const HermitianMatrix phi_a = apply_map(inst.map, inst.A);
  const HermitianMatrix phi_b = apply_map(inst.map, inst.B);
  const HermitianMatrix sum = kappa * phi_a + phi_b;
  const HermitianMatrix c_mat = apply_map(inst.map, geometric_mean(inst.A, inst.B));
  const double k_const = dm_squared_constant(b);
  const int k = inst.map.codomain_dim();
  const HermitianMatrix eye = HermitianMatrix::identity(k);

  std::vector<InequalityReport> out;
  out.push_back(detail::order_report("dm_squared", detail::squared(sum), detail::squared(c_mat),
                                     k_const * k_const, inst.seed_trace, tol_override));
  // Chain step 1: M2 m2 m1 M1 Phi(A^{-1}) + kappa Phi(A) <= kappa (M1^2 + m1^2).
  const HermitianMatrix phi_a_inv = apply_map(inst.map, detail::inverse(inst.A));
  out.push_back(detail::order_report(
      "dm_squared.a_inverse_bound", (b.M2 * b.m2 * b.m1 * b.M1) * phi_a_inv + kappa * phi_a, eye,
      kappa * (b.M1 * b.M1 + b.m1 * b.m1), inst.seed_trace, tol_override));
  // Chain step 2: m2^2 M2^2 Phi(B^{-1}) + Phi(B) <= M2^2 + m2^2.
  const HermitianMatrix phi_b_inv = apply_map(inst.map, detail::inverse(inst.B));
  out.push_back(detail::order_report("dm_squared.b_inverse_bound",
                                     (b.m2 * b.m2 * b.M2 * b.M2) * phi_b_inv + phi_b, eye,
                                     b.M2 * b.M2 + b.m2 * b.m2, inst.seed_trace, tol_override));
  // Chain step 3: 2 sqrt(M2 M1 m1 m2) M2 m2 Phi(A#B)^{-1} + (Phi(B) + kappa Phi(A))
  //               <= kappa (M1^2 + m1^2) + M2^2 + m2^2.
  const double scale = 2.0 * std::sqrt(b.M2 * b.M1 * b.m1 * b.m2) * b.M2 * b.m2;
  out.push_back(detail::order_report(
      "dm_squared.mean_inverse_bound", scale * detail::inverse(c_mat) + sum, eye,
      kappa * (b.M1 * b.M1 + b.m1 * b.m1) + b.M2 * b.M2 + b.m2 * b.m2, inst.seed_trace,
      tol_override));
  return out;
}

/// Fujii squaring: A <= B with m <= A <= M implies A^2 <= ((M+m)^2/4Mm) B^2.
inline InequalityReport check_fujii_squaring(const OrderedPair& pair, SeedTrace id,
                                             double tol_override = -1.0) {
  return detail::order_report("fujii_squaring", detail::squared(pair.A), detail::squared(pair.B),
                              kantorovich_factor(pair.m, pair.M), id, tol_override);
}

/// Choi: Phi(A)^{-1} <= Phi(A^{-1}).
inline InequalityReport check_choi(const Instance& inst, double tol_override = -1.0) {
  const HermitianMatrix l = detail::inverse(apply_map(inst.map, inst.A));
  const HermitianMatrix r = apply_map(inst.map, detail::inverse(inst.A));
  return detail::order_report("choi", l, r, 1.0, inst.seed_trace, tol_override);
}

/// AM-GM: A # B <= (A + B)/2.
inline InequalityReport check_amgm(const HermitianMatrix& a, const HermitianMatrix& b, SeedTrace id,
                                   double tol_override = -1.0) {
  return detail::order_report("amgm", geometric_mean(a, b), 0.5 * (a + b), 1.0, id, tol_override);
}

/// (A # B)^{-1} = A^{-1} # B^{-1}, an equality check: the margin is the
/// allowed residual minus the observed one (relative tolerance 1e-9).
inline InequalityReport check_inverse_sharp(const HermitianMatrix& a, const HermitianMatrix& b,
                                            SeedTrace id) {
  const HermitianMatrix lhs = detail::inverse(geometric_mean(a, b));
  const HermitianMatrix rhs = geometric_mean(detail::inverse(a), detail::inverse(b));
  const double residual = operator_norm(lhs - rhs);
  const double scale = operator_norm(lhs);
  InequalityReport rep;
  rep.check_name = "inverse_sharp";
  rep.theorem_constant = 1.0;
  rep.optimal_constant = optimal_constant(lhs, rhs);
  rep.slack = rep.theorem_constant - rep.optimal_constant;
  rep.margin = 1e-9 * scale - residual;
  rep.holds = rep.margin >= 0.0;
  rep.instance_id = id;
  return rep;
}

/// Bhatia-Kittaneh: ||A B|| <= (1/4) ||A + B||^2 for A, B >= 0. The theorem
/// constant is the universal 1/4; the optimal constant is the attained
/// coefficient ||A B|| / ||A + B||^2.
inline InequalityReport check_bk_norm(const HermitianMatrix& a, const HermitianMatrix& b,
                                      SeedTrace id, double tol_override = -1.0) {
  const double prod_norm = operator_norm(a.cm() * b.cm());
  const double sum_norm = operator_norm(a + b);
  InequalityReport rep;
  rep.check_name = "bk_norm";
  rep.theorem_constant = 0.25;
  rep.optimal_constant = sum_norm > 0.0 ? prod_norm / (sum_norm * sum_norm) : 0.0;
  rep.slack = rep.theorem_constant - rep.optimal_constant;
  rep.margin = 0.25 * sum_norm * sum_norm - prod_norm;
  const double tol = tol_override >= 0.0 ? tol_override : 1e-9 * std::max(1.0, sum_norm * sum_norm);
  rep.holds = rep.margin >= -tol;
  rep.instance_id = id;
  return rep;
}

/// Sandwich enclosures: m <= A#B <= M, the same for Phi(A)#Phi(B), and
/// m^2 <= Phi(A#B)^2 <= M^2 (m = m1 m2, M = M1 M2). First report aggregates;
/// the six bound checks follow as sub-reports.
inline std::vector<InequalityReport> check_sandwich(const Instance& inst,
                                                    double tol_override = -1.0) {
  const SpectralBounds& bd = inst.bounds;
  const double m = bd.m(), M = bd.M();
  const HermitianMatrix g = geometric_mean(inst.A, inst.B);
  const HermitianMatrix d = geometric_mean(apply_map(inst.map, inst.A), apply_map(inst.map, inst.B));
  const HermitianMatrix c2 = detail::squared(apply_map(inst.map, g));
  const HermitianMatrix eye_n = HermitianMatrix::identity(inst.A.dim());
  const HermitianMatrix eye_k = HermitianMatrix::identity(inst.map.codomain_dim());

  std::vector<InequalityReport> subs;
  subs.push_back(detail::order_report("sandwich.sharp_lower", m * eye_n, g, 1.0, inst.seed_trace, tol_override));
  subs.push_back(detail::order_report("sandwich.sharp_upper", g, M * eye_n, 1.0, inst.seed_trace, tol_override));
  subs.push_back(detail::order_report("sandwich.mapped_lower", m * eye_k, d, 1.0, inst.seed_trace, tol_override));
  subs.push_back(detail::order_report("sandwich.mapped_upper", d, M * eye_k, 1.0, inst.seed_trace, tol_override));
  subs.push_back(detail::order_report("sandwich.squared_lower", (m * m) * eye_k, c2, 1.0, inst.seed_trace, tol_override));
  subs.push_back(detail::order_report("sandwich.squared_upper", c2, (M * M) * eye_k, 1.0, inst.seed_trace, tol_override));

  InequalityReport agg;
  agg.check_name = "sandwich";
  agg.theorem_constant = 1.0;
  agg.instance_id = inst.seed_trace;
  agg.holds = true;
  agg.margin = std::numeric_limits<double>::infinity();
  agg.optimal_constant = 0.0;
  for (const InequalityReport& s : subs) {
    agg.holds = agg.holds && s.holds;
    agg.margin = std::min(agg.margin, s.margin);
    agg.optimal_constant = std::max(agg.optimal_constant, s.optimal_constant);
  }
  agg.slack = agg.theorem_constant - agg.optimal_constant;

  std::vector<InequalityReport> out;
  out.push_back(std::move(agg));
  for (InequalityReport& s : subs) out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Bulk running

inline const std::vector<std::string>& known_check_names() {
  static const std::vector<std::string> names = {
      "ando",       "polya_szego", "squared_ps",     "general_mean", "general_squared",
      "gruss",      "dm",          "dm_squared",     "fujii_squaring", "choi",
      "amgm",       "inverse_sharp", "bk_norm",      "sandwich"};
  return names;
}

inline bool is_known_check(const std::string& name) {
  for (const std::string& n : known_check_names())
    if (n == name) return true;
  return false;
}

struct BulkOptions {
  std::vector<int> dims = {1, 2, 4, 8};
  int count = 100;
  std::uint64_t seed = 0;
  SpectralBounds bounds;
  std::vector<std::string> checks = known_check_names();  // canonical names
  std::vector<double> general_mus = {0.25, 0.5, 0.75};
  double tol_override = -1.0;  // < 0: scale-relative default
  int jobs = 1;
};

// Auxiliary stream for the Fujii ordered pair, decoupled from the instance
// stream at the same index.
inline constexpr std::uint64_t kPairStreamFlag = std::uint64_t(1) << 63;

/// All requested reports for the instance at one stream index, in canonical
/// check order. `general_*` checks expand over the mu list with the weight
/// recorded in the check name.
inline std::vector<InequalityReport> run_checks_on_instance(const Instance& inst,
                                                            const BulkOptions& opt) {
  std::vector<InequalityReport> out;
  const auto mu_tag = [](const char* base, double mu) {
    std::ostringstream os;
    os << base << "[mu=" << mu << "]";
    return os.str();
  };
  for (const std::string& name : opt.checks) {
    if (name == "ando") {
      out.push_back(check_ando(inst, MeanSpec::geometric(), opt.tol_override));
    } else if (name == "polya_szego") {
      out.push_back(check_polya_szego(inst, opt.tol_override));
    } else if (name == "squared_ps") {
      out.push_back(check_squared_ps(inst, opt.tol_override));
    } else if (name == "general_mean") {
      for (double mu : opt.general_mus) {
        InequalityReport rep = check_general_mean(inst, MeanSpec::weighted_geometric(mu), opt.tol_override);
        rep.check_name = mu_tag("general_mean", mu);
        out.push_back(std::move(rep));
      }
    } else if (name == "general_squared") {
      for (double mu : opt.general_mus) {
        InequalityReport rep = check_general_squared(inst, MeanSpec::weighted_geometric(mu), opt.tol_override);
        rep.check_name = mu_tag("general_squared", mu);
        out.push_back(std::move(rep));
      }
    } else if (name == "gruss") {
      out.push_back(check_gruss(inst, opt.tol_override));
    } else if (name == "dm") {
      out.push_back(check_dm(inst, opt.tol_override));
    } else if (name == "dm_squared") {
      for (InequalityReport& rep : check_dm_squared(inst, opt.tol_override)) out.push_back(std::move(rep));
    } else if (name == "fujii_squaring") {
      Rng pair_rng(inst.seed_trace.seed, inst.seed_trace.stream | kPairStreamFlag);
      const OrderedPair pair = random_ordered_pair(
          inst.A.dim(), inst.bounds.m1 * inst.bounds.m1, inst.bounds.M1 * inst.bounds.M1, pair_rng);
      out.push_back(check_fujii_squaring(pair, inst.seed_trace, opt.tol_override));
    } else if (name == "choi") {
      out.push_back(check_choi(inst, opt.tol_override));
    } else if (name == "amgm") {
      out.push_back(check_amgm(inst.A, inst.B, inst.seed_trace, opt.tol_override));
    } else if (name == "inverse_sharp") {
      out.push_back(check_inverse_sharp(inst.A, inst.B, inst.seed_trace));
    } else if (name == "bk_norm") {
      out.push_back(check_bk_norm(inst.A, inst.B, inst.seed_trace, opt.tol_override));
    } else if (name == "sandwich") {
      for (InequalityReport& rep : check_sandwich(inst, opt.tol_override)) out.push_back(std::move(rep));
    } else {
      throw DomainViolation("unknown check name: " + name);
    }
  }
  return out;
}

struct CheckSummary {
  std::string check_name;
  int count = 0;
  int failures = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_optimal_constant = -std::numeric_limits<double>::infinity();
  double mean_slack = 0.0;
};

/// Reports for every (dim, index) pair in stream order. Instance streams are
/// numbered dim-major, so results are independent of the worker count.
inline std::vector<InequalityReport> run_bulk(const BulkOptions& opt) {
  const std::uint64_t total = std::uint64_t(opt.dims.size()) * std::uint64_t(opt.count);
  std::vector<std::vector<InequalityReport>> slots(total);
  std::atomic<std::uint64_t> cursor{0};
  const int jobs = std::max(1, opt.jobs);

  const auto worker = [&]() {
    for (;;) {
      const std::uint64_t idx = cursor.fetch_add(1);
      if (idx >= total) return;
      const int dim = opt.dims[size_t(idx) / opt.count];
      const Instance inst = make_instance(dim, opt.bounds, opt.seed, idx);
      slots[idx] = run_checks_on_instance(inst, opt);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<InequalityReport> out;
  for (std::vector<InequalityReport>& slot : slots)
    for (InequalityReport& rep : slot) out.push_back(std::move(rep));
  return out;
}

/// Per-check aggregate in first-appearance order.
inline std::vector<CheckSummary> summarize(const std::vector<InequalityReport>& reports) {
  std::vector<CheckSummary> out;
  const auto slot = [&](const std::string& name) -> CheckSummary& {
    for (CheckSummary& s : out)
      if (s.check_name == name) return s;
    out.push_back(CheckSummary{name});
    return out.back();
  };
  for (const InequalityReport& rep : reports) {
    CheckSummary& s = slot(rep.check_name);
    ++s.count;
    if (!rep.holds) ++s.failures;
    s.min_margin = std::min(s.min_margin, rep.margin);
    s.max_optimal_constant = std::max(s.max_optimal_constant, rep.optimal_constant);
    s.mean_slack += rep.slack;
  }
  for (CheckSummary& s : out)
    if (s.count > 0) s.mean_slack /= s.count;
  return out;
}

}  // namespace sharpbound
