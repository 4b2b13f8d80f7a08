// Command-line front end: constants, verify, falsify, sweep, demo.
// All runs are seeded; identical flags produce byte-identical output.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sharpbound/sharpbound.hpp"

namespace {

using namespace sharpbound;

// Shortest round-trip decimal form, shared by CSV and the demo table.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Flag > environment (SHARPBOUND_TOL) > scale-relative default (-1).
double resolve_tolerance(const std::optional<double>& flag_tol) {
  if (flag_tol) return *flag_tol;
  if (const char* env = std::getenv("SHARPBOUND_TOL")) {
    try {
      return std::stod(env);
    } catch (...) {
      throw DomainViolation("SHARPBOUND_TOL is not a number");
    }
  }
  return -1.0;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

struct BoundsFlags {
  double m1 = 1.0, M1 = 2.0, m2 = 1.0, M2 = 2.0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--m1", m1, "lower bound: m1^2 <= A");
    cmd->add_option("--M1", M1, "upper bound: A <= M1^2");
    cmd->add_option("--m2", m2, "lower bound: m2^2 <= B");
    cmd->add_option("--M2", M2, "upper bound: B <= M2^2");
  }
  SpectralBounds value() const { return SpectralBounds(m1, M1, m2, M2); }
};

int run_constants(const BoundsFlags& bf, const std::string& mean_name, double mu,
                  const std::string& out_path) {
  const SpectralBounds b = bf.value();
  const BoundSet set = bound_set(b);
  const MeanSpec mean = named_mean(mean_name, mu);
  const double ag = alpha_general(mean, b);
  json j{{"m1", b.m1},
         {"M1", b.M1},
         {"m2", b.m2},
         {"M2", b.M2},
         {"alpha", set.alpha},
         {"beta", set.beta},
         {"dm", set.dm},
         {"K", set.dm_squared},
         {"gruss", set.gruss},
         {"kantorovich", set.kantorovich},
         {"mean", mean.name()},
         {"alpha_general", ag},
         {"beta_general", beta_general(mean, b, ag)}};
  return write_output(j.dump() + "\n", out_path);
}

int run_verify(const BoundsFlags& bf, std::vector<int> dims, int count, std::uint64_t seed,
               std::vector<std::string> checks, std::vector<double> mus,
               const std::optional<double>& tol, int jobs, const std::string& format,
               const std::string& out_path) {
  for (int n : dims) {
    if (n < 1 || n > 64) {
      std::cerr << "--dims entries must lie in [1, 64], got " << n << "\n";
      return 2;
    }
  }
  BulkOptions opt;
  opt.bounds = bf.value();
  opt.dims = std::move(dims);
  opt.count = count;
  opt.seed = seed;
  opt.general_mus = std::move(mus);
  opt.tol_override = resolve_tolerance(tol);
  opt.jobs = jobs;
  if (!(checks.size() == 1 && checks[0] == "all")) {
    for (const std::string& name : checks) {
      if (!is_known_check(name)) {
        std::cerr << "unknown checker name '" << name << "' in --checks; known names:";
        for (const std::string& k : known_check_names()) std::cerr << " " << k;
        std::cerr << "\n";
        return 2;
      }
    }
    opt.checks = std::move(checks);
  }

  const std::vector<InequalityReport> reports = run_bulk(opt);
  std::ostringstream out;
  int failures = 0;
  if (format == "csv") {
    out << "check_name,holds,margin,theorem_constant,optimal_constant,slack,seed,stream\n";
    for (const InequalityReport& rep : reports) {
      if (!rep.holds) ++failures;
      out << rep.check_name << ',' << (rep.holds ? 1 : 0) << ',' << fmt(rep.margin) << ','
          << fmt(rep.theorem_constant) << ',' << fmt(rep.optimal_constant) << ',' << fmt(rep.slack)
          << ',' << rep.instance_id.seed << ',' << rep.instance_id.stream << '\n';
    }
  } else {
    for (const InequalityReport& rep : reports) {
      if (!rep.holds) ++failures;
      out << report_to_json(rep).dump() << "\n";
    }
    json summary = json::array();
    for (const CheckSummary& s : summarize(reports)) summary.push_back(summary_to_json(s));
    out << json{{"summary", std::move(summary)}}.dump() << "\n";
  }
  const int rc = write_output(out.str(), out_path);
  if (rc != 0) return rc;
  if (failures > 0) {
    std::cerr << failures << " of " << reports.size() << " checks failed\n";
    return 1;
  }
  return 0;
}

int run_falsify(const BoundsFlags& bf, const std::string& target_flag, int dim,
                std::uint64_t budget, std::uint64_t seed, int jobs, const std::string& out_path) {
  const ConjectureTarget target = target_from_name(target_flag);
  const SearchReport rep = falsify(target, bf.value(), dim, budget, seed, jobs);
  const int rc = write_output(search_report_to_json(rep).dump() + "\n", out_path);
  if (rc != 0) return rc;
  if (rep.backstop_violations > 0) {
    std::cerr << "soundness backstop tripped " << rep.backstop_violations
              << " times: proven constant exceeded (numerical bug)\n";
    return 1;
  }
  return 0;
}

int run_sweep(const std::vector<double>& ratios, int dim, std::uint64_t budget, std::uint64_t seed,
              int jobs, const std::string& out_path) {
  std::vector<std::pair<double, double>> grid;
  for (double r1 : ratios)
    for (double r2 : ratios) grid.emplace_back(r1, r2);
  const std::vector<SweepRow> rows = sweep(grid, dim, budget, seed, jobs);
  std::ostringstream out;
  out << "ratio1,ratio2,alpha_sq,beta,best_ps2,dm_sq,K_sq,best_dm2\n";
  for (const SweepRow& row : rows) {
    out << fmt(row.ratio1) << ',' << fmt(row.ratio2) << ',' << fmt(row.alpha_sq) << ','
        << fmt(row.beta) << ',' << fmt(row.best_ps2) << ',' << fmt(row.dm_sq) << ','
        << fmt(row.k_sq) << ',' << fmt(row.best_dm2) << '\n';
  }
  return write_output(out.str(), out_path);
}

int run_demo() {
  constexpr std::uint64_t kDemoSeed = 424242;
  const SpectralBounds b(1, 2, 1, 2);
  std::printf("sharpbound demo (seed %llu)\n\n", (unsigned long long)kDemoSeed);

  std::printf("equality witness, bounds (m1,M1,m2,M2) = (1,2,1,2):\n");
  std::printf("  %-14s %12s %12s %12s\n", "check", "constant", "optimal", "slack");
  const Instance witness = equality_witness(b);
  const InequalityReport ps = check_polya_szego(witness);
  const InequalityReport dm = check_dm(witness);
  const InequalityReport ando = check_ando(witness, MeanSpec::geometric());
  const InequalityReport sq = check_squared_ps(witness);
  for (const InequalityReport* rep : {&ps, &dm, &ando, &sq})
    std::printf("  %-14s %12.8g %12.8g %12.3g\n", rep->check_name.c_str(), rep->theorem_constant,
                rep->optimal_constant, rep->slack);
  std::printf("  (polya_szego and dm are attained: slack ~ 0)\n\n");

  BulkOptions opt;
  opt.bounds = b;
  opt.dims = {4};
  opt.count = 40;
  opt.seed = kDemoSeed;
  const std::vector<InequalityReport> reports = run_bulk(opt);
  std::printf("bulk pass: n = 4, %d instances per check, bounds (1,2,1,2):\n", opt.count);
  std::printf("  %-22s %6s %9s %12s %12s %12s\n", "check", "count", "failures", "min_margin",
              "max_optimal", "mean_slack");
  bool all_hold = true;
  for (const CheckSummary& s : summarize(reports)) {
    all_hold = all_hold && s.failures == 0;
    std::printf("  %-22s %6d %9d %12.4g %12.8g %12.4g\n", s.check_name.c_str(), s.count,
                s.failures, s.min_margin, s.max_optimal_constant, s.mean_slack);
  }
  std::printf("\n%s\n", all_hold ? "all checks passed" : "CHECK FAILURES PRESENT");
  return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical certification of squared operator Polya-Szego / Diaz-Metcalf inequalities"};
  app.require_subcommand(1);

  // constants
  auto* constants_cmd = app.add_subcommand("constants", "emit every bound constant as flat JSON");
  BoundsFlags cb;
  cb.attach(constants_cmd);
  std::string mean_name = "geometric";
  double mean_mu = 0.5;
  std::string constants_out;
  constants_cmd->add_option("--mean", mean_name, "mean for alpha_general/beta_general")
      ->check(CLI::IsMember({"geometric", "arithmetic", "harmonic", "power"}));
  constants_cmd->add_option("--mu", mean_mu, "weight for --mean power");
  constants_cmd->add_option("--out", constants_out, "output file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run seeded bulk theorem checks");
  BoundsFlags vb;
  vb.attach(verify_cmd);
  std::vector<int> dims = {1, 2, 4, 8};
  int count = 100;
  std::uint64_t verify_seed = 0;
  std::vector<std::string> checks = {"all"};
  std::vector<double> mus = {0.25, 0.5, 0.75};
  std::optional<double> tol;
  int jobs = 1;
  std::string format = "json";
  std::string verify_out;
  verify_cmd->add_option("--dims", dims, "instance dimensions")->delimiter(',');
  verify_cmd->add_option("--count", count, "instances per dimension")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_seed, "run seed")->required();
  verify_cmd->add_option("--checks", checks, "checker names or 'all'")->delimiter(',');
  verify_cmd->add_option("--mus", mus, "weights for the general-mean checks")->delimiter(',');
  verify_cmd->add_option("--tol", tol, "margin tolerance override (default: scale-relative)");
  verify_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", format, "json (report lines + summary) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", verify_out, "output file (default stdout)");

  // falsify
  auto* falsify_cmd = app.add_subcommand("falsify", "search for conjecture counterexamples");
  BoundsFlags fb;
  fb.attach(falsify_cmd);
  std::string target = "conjecture_ps2";
  int falsify_dim = 2;
  std::uint64_t budget = 10000;
  std::uint64_t falsify_seed = 0;
  int falsify_jobs = 1;
  std::string falsify_out;
  falsify_cmd->add_option("--target", target, "conjecture_ps2 or conjecture_dm2")
      ->check(CLI::IsMember({"conjecture_ps2", "conjecture_dm2"}));
  falsify_cmd->add_option("--dim", falsify_dim, "instance dimension")->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--budget", budget, "number of instance evaluations")
      ->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--seed", falsify_seed, "run seed")->required();
  falsify_cmd->add_option("--jobs", falsify_jobs, "worker threads")->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--out", falsify_out, "report file (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "falsify over a grid of spectrum ratios, CSV out");
  std::vector<double> ratios = {1, 2, 4, 8};
  int sweep_dim = 2;
  std::uint64_t per_cell_budget = 500;
  std::uint64_t sweep_seed = 0;
  int sweep_jobs = 1;
  std::string sweep_out;
  sweep_cmd->add_option("--ratios", ratios, "spectrum ratios (cells = cross product)")
      ->delimiter(',');
  sweep_cmd->add_option("--dim", sweep_dim, "instance dimension")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--budget", per_cell_budget, "evaluations per cell and target")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_seed, "run seed")->required();
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "CSV file (default stdout)");

  // demo
  app.add_subcommand("demo", "equality witnesses plus a bulk pass at n = 4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, config errors exit 2
  }

  try {
    if (constants_cmd->parsed()) return run_constants(cb, mean_name, mean_mu, constants_out);
    if (verify_cmd->parsed())
      return run_verify(vb, dims, count, verify_seed, checks, mus, tol, jobs, format, verify_out);
    if (falsify_cmd->parsed())
      return run_falsify(fb, target, falsify_dim, budget, falsify_seed, falsify_jobs, falsify_out);
    if (sweep_cmd->parsed())
      return run_sweep(ratios, sweep_dim, per_cell_budget, sweep_seed, sweep_jobs, sweep_out);
    return run_demo();
  } catch (const DomainViolation& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
