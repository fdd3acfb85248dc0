// kpsolve: command-line driver for the Burgers and KP studies.
//
// Exit codes: 0 success, 1 bad arguments, 2 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kpsldg/costmodel.hpp"
#include "kpsldg/csv.hpp"
#include "kpsldg/snapshot.hpp"
#include "kpsldg/studies.hpp"

using namespace kpsldg;

namespace {

constexpr int kBadArguments = 1;
constexpr int kNumericalFailure = 2;

struct BadArguments : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by the subcommands. Lists accept several values
// (`--order 2 4 8`); single-run commands use the first entry.
struct Options {
  std::string model = "kp2";
  double epsilon = std::nan("");
  double delta = 0x1p-52;
  std::vector<int> order;
  std::vector<int> cells_x;
  std::vector<int> nx;
  int ny = 0;
  double Lx = std::nan("");
  double Ly = std::nan("");
  std::vector<double> tau;
  double tau_ref = std::nan("");
  double tmax = std::nan("");
  std::string scheme = "strang";
  std::string char_solver;
  std::vector<int> iters;
  double tol = 0.0;
  long snapshot_stride = 0;
  std::string out = ".";
  std::string ic;
  bool timing = false;
  std::string mode = "time";
  std::vector<std::string> records;
  bool run_study = false;
  std::vector<double> tolerances{1e-1, 1e-2};
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "kp1 (lambda=-1) or kp2 (lambda=+1)")
      ->check(CLI::IsMember({"kp1", "kp2"}));
  sub->add_option("--epsilon", o.epsilon, "dispersion parameter");
  sub->add_option("--delta", o.delta, "regularisation of the inverse derivative");
  sub->add_option("--order", o.order, "dG order(s)")->check(CLI::Range(1, 16));
  sub->add_option("--cells-x", o.cells_x, "dG cell count(s) in x")->check(CLI::PositiveNumber);
  sub->add_option("--nx", o.nx, "equidistant x points")->check(CLI::PositiveNumber);
  sub->add_option("--ny", o.ny, "equidistant y points")->check(CLI::PositiveNumber);
  sub->add_option("--Lx", o.Lx, "half width in x");
  sub->add_option("--Ly", o.Ly, "half width in y");
  sub->add_option("--tau", o.tau, "time step(s)")->check(CLI::PositiveNumber);
  sub->add_option("--tmax", o.tmax, "final time")->check(CLI::PositiveNumber);
  sub->add_option("--scheme", o.scheme, "strang or exp2")
      ->check(CLI::IsMember({"strang", "exp2"}));
  sub->add_option("--char-solver", o.char_solver, "fixed, secant or newton")
      ->check(CLI::IsMember({"fixed", "secant", "newton"}));
  sub->add_option("--iters", o.iters, "characteristic solver iteration budget(s)")
      ->check(CLI::Range(1, 100));
  sub->add_option("--tol", o.tol, "early exit tolerance of the solver (0 = fixed count)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--snapshot-stride", o.snapshot_stride, "steps between snapshots")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--out", o.out, "output directory");
  sub->add_flag("--timing", o.timing, "include wall times in the CSV");
}

template <typename T>
T first_or(const std::vector<T>& v, T fallback) {
  return v.empty() ? fallback : v.front();
}

template <typename T>
std::vector<T> list_or(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

double value_or(double v, double fallback) { return std::isnan(v) ? fallback : v; }

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

std::string out_path(const Options& o, const std::string& file) {
  return (std::filesystem::path(o.out) / file).string();
}

void stamp(CsvTable& t, const std::string& flags) {
  t.add_meta("revision", git_revision());
  t.add_meta("flags", flags);
}

CharSolverConfig solver_config(const Options& o, int default_iters) {
  CharSolverConfig c;
  c.method = o.char_solver.empty() ? CharMethod::Secant : parse_method(o.char_solver);
  c.max_iter = first_or(o.iters, default_iters);
  c.tol = o.tol;
  return c;
}

int report(const std::vector<RunRecord>& rows) {
  for (const auto& r : rows)
    if (!r.ok) {
      std::cerr << "numerical failure: " << r.note << '\n';
      return kNumericalFailure;
    }
  return 0;
}

void print_orders(const std::string& label, const std::vector<double>& errors) {
  const auto eoc = observed_orders(errors);
  std::printf("%s", label.c_str());
  for (double e : eoc) std::printf(" %.3f", e);
  std::printf("\n");
}

int cmd_burgers(const Options& o, const std::string& flags) {
  BurgersConvergenceConfig c;
  c.ic = InitialCondition::from_name(o.ic.empty() ? "sine" : o.ic);
  if (c.ic.two_dimensional()) throw BadArguments("burgers-convergence needs 1D data");
  c.ic.L = value_or(o.Lx, 20.0);
  c.orders = list_or(o.order, {2, 4, 8});
  c.cells = list_or(o.cells_x, {32, 64, 128});
  c.t_final = value_or(o.tmax, 0.1);
  c.tau = first_or(o.tau, 1e-3);
  c.solver = solver_config(o, 10);
  const auto rows = run_burgers_convergence(c);
  auto t = run_record_table(rows, o.timing);
  stamp(t, flags);
  t.write(out_path(o, "burgers_convergence.csv"));
  for (int ord : c.orders) {
    std::vector<double> errs;
    for (const auto& r : rows)
      if (r.order == ord) errs.push_back(r.error);
    std::printf("o=%d errors:", ord);
    for (double e : errs) std::printf(" %.3e", e);
    std::printf("\n");
    print_orders("  observed orders:", errs);
  }
  return report(rows);
}

int cmd_iteration(const Options& o, const std::string& flags) {
  IterationStudyConfig c;
  c.ic = InitialCondition::from_name(o.ic.empty() ? "sine" : o.ic);
  if (c.ic.two_dimensional()) throw BadArguments("iteration-study needs 1D data");
  c.ic.L = value_or(o.Lx, 20.0);
  c.order = first_or(o.order, 4);
  c.cells = first_or(o.cells_x, 512);
  c.t_final = value_or(o.tmax, 0.8);
  c.taus = list_or(o.tau, {1e-2});
  c.iterations = list_or(o.iters, c.iterations);
  if (!o.char_solver.empty()) c.methods = {parse_method(o.char_solver)};
  const auto rows = run_iteration_study(c);
  auto t = run_record_table(rows, o.timing);
  stamp(t, flags);
  t.write(out_path(o, "iteration_study.csv"));
  for (const auto& r : rows)
    std::printf("%-7s i=%-3ld tau=%-8g error=%.3e\n", r.scheme.c_str(), r.iterations, r.tau,
                r.error);
  return report(rows);
}

KPRunConfig kp_config(const Options& o, double tmax_default) {
  KPRunConfig c;
  c.params.lambda = o.model == "kp1" ? -1 : 1;
  c.params.epsilon = value_or(o.epsilon, 0.1);
  c.params.delta = o.delta;
  c.params.validate();
  c.ic = InitialCondition::from_name(o.ic.empty() ? "schwartzian" : o.ic);
  c.ic.epsilon = c.params.epsilon;
  c.scheme = o.scheme == "exp2" ? Scheme::Exp2 : Scheme::Strang;
  c.order = first_or(o.order, 4);
  const int cells = first_or(o.cells_x, 0);
  c.n_x = first_or(o.nx, cells > 0 ? cells * c.order : 128);
  if (c.n_x % 2 != 0) throw BadArguments("--nx must be even");
  if (cells > 0) c.rho = static_cast<double>(cells) * c.order / c.n_x;
  c.n_y = o.ny > 0 ? o.ny : 512;
  c.Lx = value_or(o.Lx, 10.0 * std::numbers::pi);
  c.Ly = value_or(o.Ly, 10.0 * std::numbers::pi);
  c.tau = first_or(o.tau, 1e-3);
  c.t_final = value_or(o.tmax, tmax_default);
  c.solver = solver_config(o, 5);
  return c;
}

int cmd_kp_run(const Options& o, const std::string& flags) {
  const KPRunConfig c = kp_config(o, 0.4);
  std::vector<Observer> observers;
  if (o.snapshot_stride > 0) {
    observers.push_back([&](long step, double t, const GridField2D& u) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%08ld.bin", step);
      write_snapshot_binary(out_path(o, name), u, t);
    });
  }
  const auto res = run_kp(c, observers, o.snapshot_stride);
  auto t = run_record_table({res.record}, o.timing);
  stamp(t, flags);
  t.write(out_path(o, "kp_run.csv"));
  if (!res.record.ok) return report({res.record});
  write_snapshot_binary(out_path(o, "final.bin"), res.field, c.t_final);
  write_snapshot_csv(out_path(o, "final.csv"), res.field, c.t_final);
  std::printf("t=%g max|u|=%.6f mass drift=%.3e\n", c.t_final, max_abs(res.field),
              res.record.mass_drift);
  return 0;
}

int cmd_kp_convergence(const Options& o, const std::string& flags) {
  KPRunConfig c = kp_config(o, 0.1);
  if (o.ny <= 0) c.n_y = c.n_x;
  std::vector<RunRecord> rows;
  if (o.mode == "time") {
    const auto taus = list_or(o.tau, {4e-3, 2e-3, 1e-3});
    const auto res = run_kp_time_convergence(c, taus, value_or(o.tau_ref, 1.25e-4));
    rows = res.records;
    rows.push_back(res.reference_record);
  } else {
    const auto ns = list_or(o.nx, {32, 64, 128});
    int ref_n = ns.back() * 4;
    c.tau = first_or(o.tau, 1e-4);
    rows = run_kp_space_convergence(c, ns, ref_n);
  }
  auto t = run_record_table(rows, o.timing);
  stamp(t, flags);
  t.write(out_path(o, "kp_convergence.csv"));
  std::vector<double> errs;
  for (const auto& r : rows)
    if (r.study != "kp-convergence-reference") {
      std::printf("tau=%-8g n_x=%-4d error=%.3e\n", r.tau, r.n_x, r.error);
      errs.push_back(r.error);
    }
  print_orders("observed orders:", errs);
  return report(rows);
}

int cmd_soliton(const Options& o, const std::string& flags) {
  SolitonStudyConfig c;
  c.orders = list_or(o.order, {2, 3, 4, 5});
  c.tau = first_or(o.tau, 1e-2);
  c.t_final = value_or(o.tmax, 50.0);
  c.dof = first_or(o.nx, 512);
  c.n_y = o.ny > 0 ? o.ny : 8;
  c.Lx = value_or(o.Lx, c.Lx);
  c.Ly = value_or(o.Ly, c.Ly);
  c.epsilon = value_or(o.epsilon, 1.0);
  c.solver = solver_config(o, 5);
  if (o.snapshot_stride > 0) c.record_stride = o.snapshot_stride;
  const auto res = run_soliton_study(c);

  CsvTable amp({"order", "t", "amplitude"});
  stamp(amp, flags);
  for (const auto& s : res.samples)
    amp.add_row({std::to_string(s.order), format_double(s.t), format_double(s.amplitude)});
  amp.write(out_path(o, "soliton.csv"));
  auto t = run_record_table(res.records, o.timing);
  stamp(t, flags);
  t.write(out_path(o, "soliton_summary.csv"));
  for (const auto& r : res.records)
    std::printf("o=%d n_x=%d amplitude error at t=%g: %.3e\n", r.order, r.n_x, r.t_final,
                r.error);
  return report(res.records);
}

int cmd_cost(const Options& o, const std::string& flags, const CLI::App& sub) {
  std::vector<RunRecord> rows;
  if (o.run_study) {
    CostStudyConfig c;
    c.base = kp_config(o, 0.1);
    if (!o.nx.empty()) c.strang_n = c.exp2_n = o.nx;
    if (!o.tau.empty()) c.taus = o.tau;
    c.tolerances = o.tolerances;
    const auto res = run_cost_study(c);
    rows = res.records;
  } else {
    for (const auto& p : o.records) {
      auto r = read_run_records(p);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  if (rows.empty()) throw BadArguments("cost-compare: no runs given\n" + sub.help());
  auto records = run_record_table(rows, o.timing);
  stamp(records, flags);
  if (o.run_study) records.write(out_path(o, "cost_runs.csv"));
  const auto points = cost_accuracy_curve(rows, o.tolerances);
  auto t = cost_point_table(points);
  stamp(t, flags);
  t.write(out_path(o, "cost_compare.csv"));
  for (const auto& p : points) {
    if (p.warning)
      std::printf("%-7s tol=%-6g no run meets the tolerance\n", p.scheme.c_str(), p.tolerance);
    else
      std::printf("%-7s tol=%-6g error=%.3e tau=%-8g n_x=%-4d cost=%.4e%s\n", p.scheme.c_str(),
                  p.tolerance, p.error, p.tau, p.n_x, p.cost, p.balanced ? "" : " (unbalanced)");
  }
  return 0;
}

int seed_check() {
  bool ok = true;
  for (const auto& c : run_seed_check()) {
    std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    ok = ok && c.passed;
  }
  return ok ? 0 : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burgers / KP solver with semi-Lagrangian dG splitting and exp2"};
  app.require_subcommand(0, 1);
  bool seed = false;
  app.add_flag("--seed-check", seed, "run the built-in oracle self-tests");

  Options o;
  auto* burgers = app.add_subcommand("burgers-convergence", "sLdG spatial convergence study");
  auto* iteration = app.add_subcommand("iteration-study", "characteristic solver budgets");
  auto* kp_run = app.add_subcommand("kp-run", "single KP run with snapshots");
  auto* kp_conv = app.add_subcommand("kp-convergence", "KP time or space self-convergence");
  auto* soliton = app.add_subcommand("soliton", "KP I soliton amplitude study");
  auto* cost = app.add_subcommand("cost-compare", "cost versus accuracy of Strang and exp2");
  for (auto* s : {burgers, iteration, kp_run, kp_conv, soliton, cost}) {
    add_common(s, o);
    s->add_flag("--seed-check", seed, "run the built-in oracle self-tests");
  }
  for (auto* s : {burgers, iteration, kp_run, kp_conv})
    s->add_option("--ic", o.ic, "initial value: sine, sech, lorentzian, schwartzian, soliton");
  kp_conv->add_option("--mode", o.mode, "time or space")->check(CLI::IsMember({"time", "space"}));
  kp_conv->add_option("--tau-ref", o.tau_ref, "reference time step")->check(CLI::PositiveNumber);
  cost->add_option("--records", o.records, "run-record CSV files to compare");
  cost->add_flag("--run", o.run_study, "run the KP II study instead of reading records");
  cost->add_option("--tolerances", o.tolerances, "error tolerances")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kBadArguments;
  }

  const std::string flags = join_args(argc, argv);
  try {
    if (seed) {
      const int rc = seed_check();
      if (rc != 0 || app.get_subcommands().empty()) return rc;
    }
    if (burgers->parsed()) return cmd_burgers(o, flags);
    if (iteration->parsed()) return cmd_iteration(o, flags);
    if (kp_run->parsed()) return cmd_kp_run(o, flags);
    if (kp_conv->parsed()) return cmd_kp_convergence(o, flags);
    if (soliton->parsed()) return cmd_soliton(o, flags);
    if (cost->parsed()) return cmd_cost(o, flags, *cost);
    std::cerr << app.help();
    return kBadArguments;
  } catch (const BadArguments& e) {
    std::cerr << e.what() << '\n';
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
