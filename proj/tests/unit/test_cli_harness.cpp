#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "kpsldg/csv.hpp"
#include "kpsldg/initial_conditions.hpp"
#include "kpsldg/snapshot.hpp"
#include "kpsldg/studies.hpp"
#include "../common/oracles.hpp"

using namespace kpsldg;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kpsldg_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KPSOLVE_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Data rows of a CSV file, metadata and header dropped.
std::vector<std::vector<std::string>> rows_of(const fs::path& p, std::vector<std::string>* header) {
  std::ifstream is(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (header) *header = split_csv_line(line);
      seen_header = true;
      continue;
    }
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace

TEST_CASE("initial conditions") {
  auto s = InitialCondition::from_name("soliton");
  s.epsilon = 1.0;
  CHECK(soliton_a(1.0) == 1.0);
  CHECK(soliton_b(1.0) == 4.0);
  CHECK(s(0.0, 0.0) == 2.0);
  CHECK(s(0.0, 7.0) == 2.0);
  CHECK(s(1.0, -3.0) == doctest::Approx(2.0 / (std::cosh(1.0) * std::cosh(1.0))).epsilon(1e-15));

  CHECK(schwartzian(0.0, 0.5) == 0.0);
  CHECK(schwartzian(0.0, 0.0) == 0.0);
  const double h = 1e-6;
  auto neg_sech2 = [](double r) { return -1.0 / (std::cosh(r) * std::cosh(r)); };
  // -d/dx sech^2 at (1,0) is d/dx of -sech^2, i.e. 2 sech^2(1) tanh(1) = 0.63970
  const double fd = (neg_sech2(1.0 + h) - neg_sech2(1.0 - h)) / (2.0 * h);
  CHECK(std::abs(schwartzian(1.0, 0.0) - fd) < 1e-8);
  CHECK(std::abs(schwartzian(1.0, 0.0) - 0.63970) < 1e-5);

  CHECK(InitialCondition::from_name("sine")(1.0) == std::sin(1.0));
  CHECK_THROWS_AS(InitialCondition::from_name("gaussian"), std::invalid_argument);
  for (const char* n : {"sine", "sech", "lorentzian", "schwartzian", "soliton"})
    CHECK(InitialCondition::from_name(n).name() == n);
}

TEST_CASE("step_plan and the characteristic solution") {
  CHECK(step_plan(0.1, 1e-3).first == 100);
  CHECK(step_plan(1.0, 0.3).first == 3);
  CHECK(std::abs(step_plan(1.0, 0.3).second - 1.0 / 3.0) < 1e-16);
  CHECK(step_plan(1e-12, 1e-3).first == 1);
  for (double t : {0.1, 0.5, 0.9})
    for (double x : {0.3, 2.0, 5.5})
      CHECK(std::abs(sine_burgers_by_characteristics(t, x) - oracle::sine_burgers(t, x)) < 1e-13);
}

TEST_CASE("Burgers studies") {
  BurgersConvergenceConfig c;
  c.orders = {8};
  c.cells = {64};
  auto rows = run_burgers_convergence(c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  CHECK(rows[0].error <= 1e-9);

  c.orders = {4};
  c.cells = {32, 64};
  rows = run_burgers_convergence(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error / rows[1].error >= std::pow(2.0, 3.5));

  c.cells = {16};
  c.t_final = 1e-12;
  for (int o : {1, 2, 4}) {
    c.orders = {o};
    CHECK(run_burgers_convergence(c)[0].error <= 1e-12);
  }
}

TEST_CASE("iteration study") {
  // error against the exact solution: both budgets sit at the discretisation error
  const auto ic = InitialCondition::from_name("sine");
  const DGGrid g = burgers_grid(ic, 64, 4);
  auto err = [&](CharMethod m, int i) {
    const auto f = burgers_evolve(make_initial(ic, g), 5, 1e-2, {m, i, 0.0});
    return inf_norm_diff(f, [](double x) { return oracle::sine_burgers(0.05, x); });
  };
  const double ratio = err(CharMethod::Secant, 3) / err(CharMethod::FixedPoint, 5);
  CHECK(ratio <= 2.0);
  CHECK(ratio >= 0.5);

  IterationStudyConfig c;
  c.ic = ic;
  c.cells = 64;
  c.t_final = 0.8;
  c.taus = {0.2};
  c.methods = {CharMethod::FixedPoint, CharMethod::Newton};
  c.iterations = {3};
  const auto big = run_iteration_study(c);
  CHECK(big[1].error <= big[0].error);

  CHECK(parse_method("fixed") == CharMethod::FixedPoint);
  CHECK(parse_method("newton") == CharMethod::Newton);
  CHECK_THROWS_AS(parse_method("bisection"), std::invalid_argument);
}

TEST_CASE("KP runs") {
  KPRunConfig c;
  c.n_x = c.n_y = 64;
  c.ic = InitialCondition::from_name("schwartzian");
  c.t_final = 0.02;
  c.tau = 1e-2;
  SUBCASE("zero data") {
    c.ic.c = 0.0;
    c.ic = InitialCondition::from_name("soliton");
    c.ic.c = 0.0;
    const auto r = run_kp(c);
    CHECK(r.record.ok);
    CHECK(max_abs(r.field) == 0.0);
  }
  SUBCASE("schemes agree at the same step") {
    const auto s = run_kp(c);
    c.scheme = Scheme::Exp2;
    const auto e = run_kp(c);
    REQUIRE(s.record.ok);
    REQUIRE(e.record.ok);
    const double d = field_distance(s.field, e.field);
    CHECK(std::isfinite(d));
    CHECK(d < 100.0 * max_abs(e.field));
  }
  SUBCASE("field_distance subsamples") {
    const auto a = sample(32, 32, 1.0, 1.0, [](double x, double y) { return x + y; });
    const auto b = sample(64, 64, 1.0, 1.0, [](double x, double y) { return x + y; });
    CHECK(field_distance(a, b) < 1e-15);
    CHECK_THROWS(field_distance(a, GridField2D(48, 48, 1.0, 1.0)));
  }
  CHECK(observed_orders({4.0, 1.0, 0.25}) == std::vector<double>{2.0, 2.0});
}

TEST_CASE("soliton helpers") {
  CHECK(soliton_points(512, 4) == 512);
  CHECK(soliton_points(512, 3) % 2 == 0);
  CHECK(soliton_points(512, 5) % 5 == 0);
  auto ic = InitialCondition::from_name("soliton");
  const auto u = make_initial(ic, 512, 4, 10.0 * kPi, 10.0 * kPi);
  CHECK(std::abs(peak_amplitude(u) - 2.0) < 1e-3);
  const auto shifted = sample(512, 2, 10.0 * kPi, 10.0 * kPi, [](double x, double) {
    const double s = 1.0 / std::cosh(x - 0.0613);
    return 2.0 * s * s;
  });
  CHECK(std::abs(peak_amplitude(shifted) - 2.0) < 1e-6);
}

TEST_CASE("CSV tables") {
  CsvTable t({"a", "b"});
  t.add_meta("revision", "abc");
  t.add_row({"1", "x,y"});
  t.add_row({"2", "say \"hi\""});
  CHECK_THROWS_AS(t.add_row({"3"}), std::invalid_argument);
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() == "# revision: abc\na,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
  CHECK(split_csv_line("2,\"say \"\"hi\"\"\"") == std::vector<std::string>{"2", "say \"hi\""});
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::nan("")) == "nan");

  RunRecord r;
  r.study = "s";
  r.scheme = "strang";
  r.order = 4;
  r.tau = 1e-3;
  r.error = 1.0 / 3.0;
  r.note = "a, b";
  r.ok = false;
  const auto dir = scratch("csv");
  for (bool timing : {false, true}) {
    const auto path = (dir / "sub" / "runs.csv").string();
    run_record_table({r}, timing).write(path);
    const auto back = read_run_records(path);
    REQUIRE(back.size() == 1);
    CHECK(back[0].error == r.error);
    CHECK(back[0].note == r.note);
    CHECK_FALSE(back[0].ok);
    std::vector<std::string> header;
    rows_of(path, &header);
    CHECK((std::find(header.begin(), header.end(), "wall_time") != header.end()) == timing);
  }
  CHECK_THROWS_AS(read_run_records((dir / "missing.csv").string()), std::runtime_error);
}

TEST_CASE("binary snapshots") {
  const auto dir = scratch("snap");
  const auto u = sample(6, 4, 2.0, 3.0, [](double x, double y) { return x * y + 0.1; });
  const auto path = (dir / "u.bin").string();
  write_snapshot_binary(path, u, 0.25);
  const auto s = read_snapshot_binary(path);
  CHECK(s.t == 0.25);
  CHECK(s.field.n_x == 6);
  CHECK(s.field.Ly == 3.0);
  CHECK(s.field.values == u.values);

  std::ofstream(dir / "bad.bin") << "NOTASNAPSHOT";
  CHECK_THROWS_AS(read_snapshot_binary((dir / "bad.bin").string()), std::runtime_error);
  fs::resize_file(path, fs::file_size(path) - 8);
  CHECK_THROWS_AS(read_snapshot_binary(path), std::runtime_error);
}

TEST_CASE("seed check passes") {
  for (const auto& c : run_seed_check()) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("kpsolve exit codes and outputs") {
  const auto dir = scratch("cli");
  CHECK(run_cli("cost-compare --out " + dir.string()) == 1);
  CHECK(run_cli("kp-run --model kp3") == 1);
  CHECK(run_cli("kp-run --nx 63 --out " + dir.string()) == 1);
  CHECK(run_cli("--seed-check") == 0);

  // a step far beyond the characteristic crossing time is a numerical failure
  CHECK(run_cli("burgers-convergence --ic sine --order 2 --cells-x 16 --tau 2 --tmax 2 --out " +
                dir.string()) == 2);

  CHECK(run_cli("soliton --order 3 --tau 0.01 --tmax 2 --out " + dir.string()) == 0);
  std::vector<std::string> header;
  const auto rows = rows_of(dir / "soliton.csv", &header);
  REQUIRE(header == std::vector<std::string>{"order", "t", "amplitude"});
  REQUIRE(rows.size() >= 2);
  CHECK(std::abs(std::stod(rows[0][2]) - 2.0) <= 1e-3);
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK(std::stod(rows[k][1]) > std::stod(rows[k - 1][1]));

  CHECK(run_cli("kp-run --model kp2 --nx 32 --ny 32 --tau 0.01 --tmax 0.02 --snapshot-stride 1 --out " +
                dir.string()) == 0);
  CHECK(fs::exists(dir / "kp_run.csv"));
  CHECK(fs::exists(dir / "final.bin"));
  CHECK(fs::exists(dir / "snapshot_00000001.bin"));
  const auto snap = read_snapshot_binary((dir / "final.bin").string());
  CHECK(std::abs(snap.t - 0.02) < 1e-15);

  CHECK(run_cli("cost-compare --records " + (dir / "kp_run.csv").string() + " --out " +
                dir.string()) == 0);
  CHECK(fs::exists(dir / "cost_compare.csv"));
}
