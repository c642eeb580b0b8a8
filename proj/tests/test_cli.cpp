#include "weingarten/cli.hpp"
#include "weingarten/errors.hpp"
#include "weingarten/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace weingarten;
namespace fs = std::filesystem;

namespace {

const char* kUmbilic = R"(# sphere flowing out to r = 2
[ambient]
family = euclidean
dimension = 2
r_lo = 0.5
r_hi = 4.0

[graph]
mode = umbilic

[function]
name = gauss_root

[prescribed]
coefficients = 0.5

[initial]
radius = 1.0

[flow]
t_max = 500
)";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("weingarten_test_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(path / file) << text;
    return path / file;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in, "test.ini");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("scenario parsing") {
  const auto c = parse(kUmbilic);
  CHECK(c.ambient_family == "euclidean");
  CHECK(c.dimension == 2);
  CHECK(c.r_hi == 4.0);
  CHECK(c.mode == GraphMode::umbilic);
  CHECK(c.function == "gauss_root");
  CHECK(c.f_coefficients == std::vector<double>{0.5});
  CHECK(c.t_max == 500.0);
  CHECK(c.orientation == Orientation::expanding);
  CHECK_FALSE(c.theta);

  const auto d = parse(replace(kUmbilic, "t_max = 500", "theta = 0.25\norientation = contracting\n"
                                                         "[output]\ncadence = 7"));
  CHECK(d.theta == 0.25);
  CHECK(d.orientation == Orientation::contracting);
  CHECK(d.cadence == 7);

  const auto e = parse(replace(replace(kUmbilic, "mode = umbilic", "mode = curve\nintervals = 64"),
                               "radius = 1.0", "radius = 1.0\nfourier = 2:0.05, 3 : 0.03"));
  REQUIRE(e.fourier.size() == 2);
  CHECK(e.fourier[1] == std::pair<int, double>{3, 0.03});
}

TEST_CASE("scenario parse errors name the line") {
  CHECK(parse_error(replace(kUmbilic, "r_lo = 0.5", "r_low = 0.5")).find("test.ini:5: unknown key 'r_low'") !=
        std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "[graph]", "[grid]")).find("unknown section [grid]") != std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "r_hi = 4.0", "r_hi = 4.0\nr_hi = 5.0")).find("duplicate key") !=
        std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "r_hi = 4.0", "r_hi = four")).find("expected a number") !=
        std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "mode = umbilic", "mode = torus")).find("mode must be") !=
        std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "radius = 1.0\n", "")).find("missing required key 'initial.radius'") !=
        std::string::npos);
  CHECK(parse_error(replace(kUmbilic, "r_hi = 4.0", "r_hi")).find("expected 'key = value'") !=
        std::string::npos);
  CHECK(parse_error(std::string("x = 1\n") + kUmbilic).find("outside of any section") != std::string::npos);
}

TEST_CASE("scenario cross-field validation") {
  auto build = [](const std::string& text) { return build_scenario(parse(text)); };
  CHECK_NOTHROW(build(kUmbilic));
  CHECK_THROWS_AS(build(replace(kUmbilic, "mode = umbilic", "mode = curve\nintervals = 64")), ValidationError);
  CHECK_THROWS_AS(build(replace(kUmbilic, "name = gauss_root", "name = nonsense")), ValidationError);
  CHECK_THROWS_AS(build(replace(kUmbilic, "radius = 1.0", "radius = 9.0")), ValidationError);
  CHECK_THROWS_AS(build(replace(kUmbilic, "family = euclidean", "family = sphere")), ValidationError);

  const auto s = build(replace(kUmbilic, "t_max = 500", "barrier_lower = 0.8\nbarrier_upper = 3"));
  REQUIRE(s.flow.barriers);
  CHECK(s.flow.barriers->lower == std::vector<double>{0.8});
  CHECK(s.flow.barriers->upper == std::vector<double>{3.0});
}

TEST_CASE("custom ambient from polynomial coefficients") {
  const auto text = replace(kUmbilic, "family = euclidean",
                            "family = custom\ntheta_coefficients = 0, 1\nchi_coefficients = 0, 0, 0.5\nchi_c0 = 1");
  const auto s = build_scenario(parse(text));
  CHECK(s.space.family() == AmbientFamily::custom);
  CHECK(slice_curvature(s.space, 2.0) == doctest::Approx(0.5));
  CHECK(chi_eval(s.space, 2.0).hessian_radial == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_scenario(parse(replace(text, "chi_c0 = 1", "chi_c0 = 3"))), ValidationError);
  CHECK_THROWS_AS(build_scenario(parse(replace(kUmbilic, "r_hi = 4.0", "r_hi = 4.0\nchi_c0 = 1"))),
                  ValidationError);
}

TEST_CASE("fourier profiles") {
  const auto u = fourier_profile(GraphMode::curve, 8, 1.0, {{2, 0.1}});
  REQUIRE(u.size() == 8);
  CHECK(u[0] == doctest::Approx(1.1));
  CHECK(u[2] == doctest::Approx(0.9));
  const auto a = fourier_profile(GraphMode::axisymmetric, 8, 1.0, {{1, 0.1}});
  REQUIRE(a.size() == 9);
  CHECK(a[8] == doctest::Approx(0.9));
  CHECK(fourier_profile(GraphMode::umbilic, 0, 2.0, {}).size() == 1);
}

TEST_CASE("run command outputs and exit codes") {
  TempDir dir("run");
  const auto config = dir.write("umbilic.ini", kUmbilic);
  std::ostringstream log;
  CHECK(run_command(config, dir.path / "out", log) == exit_code::ok);

  const auto summary = nlohmann::json::parse(slurp(dir.path / "out" / "summary.json"));
  CHECK(summary["converged"] == true);
  CHECK(summary["reason"] == "residual");
  CHECK(std::abs(summary["r_final"].get<double>() - 2.0) <= 1e-6);
  CHECK(summary["bounds"]["all"] == true);

  const auto series = slurp(dir.path / "out" / "series.csv");
  CHECK(series.rfind("t,dt,u_min,u_max,kappa_min,kappa_max,cone_margin,vtilde_min,residual_min,"
                     "residual_max,w_max\n",
                     0) == 0);
  const auto profile = slurp(dir.path / "out" / "final_profile.csv");
  CHECK(profile.rfind("node,coordinate,u,kappa_1,kappa_2,vtilde\n", 0) == 0);
  CHECK_FALSE(fs::exists(dir.path / "out" / "summary.json.tmp"));

  // Determinism: byte-identical outputs on a rerun.
  CHECK(run_command(config, dir.path / "again", log) == exit_code::ok);
  CHECK(slurp(dir.path / "again" / "series.csv") == series);
  CHECK(slurp(dir.path / "again" / "summary.json") == slurp(dir.path / "out" / "summary.json"));
}

TEST_CASE("run command validation failures exit with 2") {
  TempDir dir("invalid");
  std::ostringstream log;
  const auto outside = dir.write("outside.ini", replace(kUmbilic, "radius = 1.0", "radius = 6.0"));
  CHECK(run_command(outside, dir.path / "a", log) == exit_code::invalid);
  CHECK(log.str().find("outside the ambient domain") != std::string::npos);

  log.str("");
  const auto below = dir.write("below.ini", replace(kUmbilic, "radius = 1.0", "radius = 3.0"));
  CHECK(run_command(below, dir.path / "b", log) == exit_code::invalid);
  CHECK(log.str().find("initial F < f at node 0") != std::string::npos);
  CHECK(log.str().find("F >= f") != std::string::npos);

  log.str("");
  CHECK(run_command(dir.path / "missing.ini", dir.path / "c", log) == exit_code::invalid);
}

TEST_CASE("run command with a failing flow exits with 1") {
  TempDir dir("unconverged");
  std::ostringstream log;
  const auto config = dir.write("short.ini", replace(kUmbilic, "t_max = 500", "t_max = 1"));
  CHECK(run_command(config, dir.path / "out", log) == exit_code::failed);
  const auto summary = nlohmann::json::parse(slurp(dir.path / "out" / "summary.json"));
  CHECK(summary["reason"] == "t_max");
}

TEST_CASE("run command sweeps several configs") {
  TempDir dir("sweep");
  const auto a = dir.write("a.ini", kUmbilic);
  const auto b = dir.write("b.ini", replace(kUmbilic, "coefficients = 0.5", "coefficients = 0.25"));
  std::ostringstream log;
  CHECK(run_command({a, b}, dir.path / "out", 2, log) == exit_code::ok);
  const auto sa = nlohmann::json::parse(slurp(dir.path / "out" / "a" / "summary.json"));
  const auto sb = nlohmann::json::parse(slurp(dir.path / "out" / "b" / "summary.json"));
  CHECK(sa["r_final"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sb["r_final"].get<double>() == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(log.str().find("a.ini") < log.str().find("b.ini"));

  const auto bad = dir.write("c.ini", replace(kUmbilic, "radius = 1.0", "radius = 3.0"));
  CHECK(run_command({a, bad}, dir.path / "out2", 2, log) == exit_code::invalid);
}

TEST_CASE("check command exit codes") {
  std::ostringstream log;
  CHECK(check_command("gauss_root", 3, 0, 10000, 42, false, log) == exit_code::ok);
  CHECK(log.str().find("all checks passed") != std::string::npos);

  log.str("");
  CHECK(check_command("sigma1", 3, 0, 1000, 42, false, log) == exit_code::failed);
  CHECK(log.str().find("(g)     FAIL") != std::string::npos);

  log.str("");
  CHECK(check_command("sigma1", 3, 0, 1000, 42, true, log) == exit_code::ok);
  CHECK(log.str().find("(g)     exempt") != std::string::npos);

  CHECK(check_command("harmonic_mean", 2, 0, 10000, 42, false, log) == exit_code::ok);
  CHECK(check_command("sigma_k_root", 3, 2, 1000, 42, false, log) == exit_code::ok);
  CHECK(check_command("nonsense", 3, 0, 10, 42, false, log) == exit_code::invalid);
}
