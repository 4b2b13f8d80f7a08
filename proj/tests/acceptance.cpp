// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failed
// criteria. Criteria 1 and 7 drive the CLI binary; the rest use the library.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sharpbound/sharpbound.hpp"

#ifndef SHARPBOUND_CLI_PATH
#define SHARPBOUND_CLI_PATH "./tools/sharpbound"
#endif

using namespace sharpbound;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int num, const std::string& label, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s - %s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string out_file = "/tmp/sharpbound_acceptance_out.txt";
  const std::string cmd = std::string(SHARPBOUND_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return int(std::clamp(hw, 1u, 8u));
}

// --------------------------------------------------------------------------
// 1. Constant correctness through the CLI.
void criterion_1() {
  bool ok = true;
  std::ostringstream detail;
  struct Case {
    const char* flags;
    double alpha, beta, dm, k, gruss;
    bool check_dm_family;
  };
  const Case cases[] = {
      {"--m1 1 --M1 2 --m2 1 --M2 2", 1.25, 2.44140625, 2.5, 3.125, 23.0625, true},
      {"--m1 1 --M1 4 --m2 1 --M2 4", 2.125, 20.125, 0, 0, 0, false},
  };
  for (const Case& c : cases) {
    const CliResult r = run_cli(std::string("constants ") + c.flags);
    if (r.exit_code != 0) {
      ok = false;
      detail << "constants exited " << r.exit_code << "; ";
      continue;
    }
    const nlohmann::json j = nlohmann::json::parse(r.out);
    const auto close = [&](const char* key, double want) {
      const double got = j.at(key).get<double>();
      if (std::abs(got - want) > 1e-12) {
        ok = false;
        detail << key << " = " << got << " wants " << want << "; ";
      }
    };
    close("alpha", c.alpha);
    close("beta", c.beta);
    if (c.check_dm_family) {
      close("dm", c.dm);
      close("K", c.k);
      close("gruss", c.gruss);
    }
  }
  if (ok) detail << "alpha/beta/dm/K/gruss at (1,2,1,2) and (1,4,1,4) within 1e-12";
  report(1, "constant correctness", ok, detail.str());
}

// --------------------------------------------------------------------------
// 2 & 5. Full theorem suite and the dominance ordering over the same reports.
std::vector<InequalityReport> criterion_2() {
  const auto start = Clock::now();
  BulkOptions opt;
  opt.bounds = SpectralBounds(1, 2, 1, 2);
  opt.dims = {1, 2, 4, 8};
  opt.count = 500;
  opt.seed = 20260810;
  opt.general_mus = {0.25, 0.5, 0.75};
  opt.jobs = worker_count();
  const std::vector<InequalityReport> reports = run_bulk(opt);

  int failures = 0;
  for (const InequalityReport& rep : reports)
    if (!rep.holds) ++failures;
  const double elapsed = seconds_since(start);

  std::ostringstream detail;
  detail << reports.size() << " reports over " << opt.dims.size() * opt.count << " instances (n in {1,2,4,8}), "
         << failures << " failures, " << std::fixed << elapsed << " s (limit 120)";
  report(2, "theorem suite", failures == 0 && elapsed < 120.0, detail.str());
  return reports;
}

void criterion_5(const std::vector<InequalityReport>& reports) {
  int violations = 0;
  for (const InequalityReport& rep : reports)
    if (rep.optimal_constant > rep.theorem_constant + 1e-8 * std::abs(rep.theorem_constant) + 1e-12)
      ++violations;

  int grid_violations = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const SpectralBounds b(1.0, 1.0 + 0.35 * i, 1.0, 1.0 + 0.35 * j);
      const double a = alpha_polya_szego(b);
      if (a * a > beta_squared(b) * (1.0 + 1e-14)) ++grid_violations;
    }
  }
  std::ostringstream detail;
  detail << violations << " dominance violations over " << reports.size()
         << " reports; alpha^2 <= beta failed on " << grid_violations << " of 400 grid cells";
  report(5, "dominance ordering", violations == 0 && grid_violations == 0, detail.str());
}

// --------------------------------------------------------------------------
// 3. Equality witnesses. The commuting trace witness attains Diaz-Metcalf for
// every b, and Polya-Szego exactly on the equal-ratio family M1/m1 = M2/m2
// (the identity sqrt((m1^2+M1^2)(M2^2+m2^2)) = alpha (m1 M2 + M1 m2) holds
// only there), so b is sampled from that family.
void criterion_3() {
  Rng rng(3141, 0);
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double m1 = rng.uniform(0.3, 2.0);
    const double m2 = rng.uniform(0.3, 2.0);
    const double ratio = rng.uniform(1.0, 6.0);
    const SpectralBounds b(m1, ratio * m1, m2, ratio * m2);
    const Instance witness = equality_witness(b);
    for (const InequalityReport& rep : {check_polya_szego(witness), check_dm(witness)}) {
      const double rel = std::abs(rep.slack) / rep.theorem_constant;
      worst = std::max(worst, rel);
      if (rel > 1e-10) ++bad;
    }
  }
  std::ostringstream detail;
  detail << "20 sampled b (equal-ratio family): worst |slack|/constant = " << worst
         << " (limit 1e-10), " << bad << " over limit";
  report(3, "equality witnesses", bad == 0, detail.str());
}

// --------------------------------------------------------------------------
// 4. Reduction identities.
void criterion_4() {
  Rng rng(2718, 0);
  const MeanSpec geo = MeanSpec::geometric();
  int bad = 0;
  double worst_alpha = 0.0, worst_beta = 0.0, worst_closed = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double m1 = rng.uniform(0.2, 2.0);
    const double m2 = rng.uniform(0.2, 2.0);
    const SpectralBounds b(m1, m1 * rng.uniform(1.0 + 1e-6, 5.0), m2, m2 * rng.uniform(1.0 + 1e-6, 5.0));
    const double alpha = alpha_polya_szego(b);
    const double beta = beta_squared(b);

    const double alpha_num = alpha_general(geo, b);
    const double beta_num = beta_general(geo, b, alpha_num);
    const double alpha_closed = alpha_weighted_geometric_closed(0.5, b);

    const double ra = std::abs(alpha_num - alpha) / alpha;
    const double rb = std::abs(beta_num - beta) / beta;
    const double rc = std::abs(alpha_closed - alpha) / alpha;
    worst_alpha = std::max(worst_alpha, ra);
    worst_beta = std::max(worst_beta, rb);
    worst_closed = std::max(worst_closed, rc);
    if (ra > 1e-10 || rb > 1e-8 || rc > 1e-10) ++bad;
  }
  std::ostringstream detail;
  detail << "100 random b: max rel dev alpha_general " << worst_alpha << " (1e-10), beta_general "
         << worst_beta << " (1e-8), closed form " << worst_closed << " (1e-10)";
  report(4, "reduction identities", bad == 0, detail.str());
}

// --------------------------------------------------------------------------
// 6. Conjecture search with the soundness backstop and the scalar oracle.
void criterion_6() {
  bool ok = true;
  std::ostringstream detail;
  const SpectralBounds bounds_list[] = {SpectralBounds(1, 2, 1, 2), SpectralBounds(1, 4, 1, 4)};
  for (ConjectureTarget target : {ConjectureTarget::ps2, ConjectureTarget::dm2}) {
    const auto start = Clock::now();
    // One config through the CLI itself, the rest in-process.
    const CliResult cli = run_cli(std::string("falsify --target ") + target_name(target) +
                                  " --m1 1 --M1 2 --m2 1 --M2 2 --dim 2 --budget 10000"
                                  " --seed 20260810 --jobs 8");
    if (cli.exit_code != 0) {
      ok = false;
      detail << target_name(target) << " CLI exited " << cli.exit_code << "; ";
    } else if (nlohmann::json::parse(cli.out).at("backstop_violations").get<std::uint64_t>() != 0) {
      ok = false;
      detail << target_name(target) << " CLI reported backstop violations; ";
    }
    for (const SpectralBounds& b : bounds_list) {
      for (int n : {2, 4}) {
        const SearchReport rep = falsify(target, b, n, 10000, 20260810, worker_count());
        if (rep.backstop_violations > 0 || rep.best_ratio > rep.proven * (1.0 + 1e-8)) {
          ok = false;
          detail << target_name(target) << " backstop tripped at n=" << n << "; ";
        }
        if (rep.violated)
          detail << target_name(target) << " ratio " << rep.best_ratio << " exceeds conjectured "
                 << rep.conjectured << " at n=" << n << " (recorded, not asserted); ";
      }
    }
    const double elapsed = seconds_since(start);
    detail << target_name(target) << " 4x10000 evals in " << std::fixed << elapsed << " s; ";
    if (elapsed >= 180.0) {
      ok = false;
      detail << "over the 180 s limit; ";
    }
  }
  // Scalar (two-atom, weighted-average map) exhaustive grid.
  for (const SpectralBounds& b : bounds_list) {
    const double a2 = std::pow(alpha_polya_szego(b), 2.0);
    const double got = scalar_best_ratio(ConjectureTarget::ps2, b);
    if (std::abs(got - a2) / a2 > 1e-10) {
      ok = false;
      detail << "scalar grid " << got << " != alpha^2 " << a2 << "; ";
    }
  }
  if (ok) detail << "backstop clean, scalar grid = alpha^2 within 1e-10";
  report(6, "conjecture search", ok, detail.str());
}

// --------------------------------------------------------------------------
// 7. Byte-identical reruns, including across worker counts.
void criterion_7() {
  bool ok = true;
  std::ostringstream detail;
  const std::pair<const char*, const char*> runs[] = {
      {"verify --dims 2,4 --count 25 --seed 11 --checks all", "verify"},
      {"falsify --target conjecture_ps2 --dim 2 --budget 2000 --seed 11", "falsify"},
      {"sweep --ratios 1,4 --dim 2 --budget 200 --seed 11", "sweep"},
  };
  for (const auto& [flags, name] : runs) {
    const CliResult once = run_cli(std::string(flags) + " --jobs 1");
    const CliResult twice = run_cli(std::string(flags) + " --jobs 1");
    const CliResult wide = run_cli(std::string(flags) + " --jobs 8");
    if (once.exit_code != 0) {
      ok = false;
      detail << name << " exited " << once.exit_code << "; ";
    }
    if (once.out != twice.out) {
      ok = false;
      detail << name << " differs across reruns; ";
    }
    if (once.out != wide.out) {
      ok = false;
      detail << name << " differs between --jobs 1 and --jobs 8; ";
    }
  }
  if (ok) detail << "verify/falsify/sweep byte-identical across reruns and --jobs 1 vs 8";
  report(7, "determinism", ok, detail.str());
}

}  // namespace

int main() {
  std::printf("sharpbound acceptance suite\n");
  const auto start = Clock::now();

  criterion_1();
  const std::vector<InequalityReport> reports = criterion_2();
  criterion_3();
  criterion_4();
  criterion_5(reports);
  criterion_6();
  criterion_7();

  std::printf("%d of 7 criteria failed (total %.1f s)\n", g_failures, seconds_since(start));
  return g_failures;
}
