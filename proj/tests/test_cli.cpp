#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bor/config.hpp"
#include "bor/run.hpp"

using namespace bor;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    validate(parse_config(text));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bor_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  CHECK(error_of(R"({"N": 40})").find("N must be an odd integer") != std::string::npos);
  CHECK(error_of(R"({"bogus": 1})").find("bogus") != std::string::npos);
  CHECK(error_of(R"({"k": [1, -1]})").find("k") != std::string::npos);
  CHECK(error_of(R"({"geometry": {"type": "samples", "file": "/nonexistent.csv"}})").find("file") !=
        std::string::npos);
  CHECK(error_of(R"({"k": {"re": 1.5, "im": 0.5}, "N": 41})").empty());
}

TEST_CASE("k sweep writes one record per wavenumber") {
  auto dir = scratch("sweep");
  auto cfg = parse_config(R"({"N": 41, "M": 2, "incident": {"type": "plane-wave"},
                             "outputs": {"diagnostics": false}, "sweep": {"k": [0.5, 0.8, 1.1, 1.4, 1.7]}})");
  cfg.output_dir = dir.string();
  auto rep = run_sweep_k(cfg);
  CHECK(rep["records"].size() == 5);
  CHECK(fs::exists(dir / "sweep.json"));
}

TEST_CASE("convergence table") {
  auto dir = scratch("conv");
  auto cfg = parse_config(R"({"k": 1.0, "M": 6, "alias_tol": 0,
      "incident": {"type": "electric-dipole", "position": [2.6, 0.2, 0.4]},
      "outputs": {"extinction": true, "extinction_points": 8, "diagnostics": false},
      "converge": {"N": [31, 41, 61]}})");
  cfg.output_dir = dir.string();
  auto rep = run_convergence(cfg);
  auto& rows = rep["rows"];
  REQUIRE(rows.size() == 3);
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i]["error"].get<double>() < rows[i - 1]["error"].get<double>());
  CHECK(fs::exists(dir / "convergence.csv"));

  cfg.converge_N = {41};
  CHECK(run_convergence(cfg)["rows"].size() == 1);
  CHECK_THROWS_AS(validate(parse_config(R"({"converge": {"N": [41, 60]}})")), InputError);
}

TEST_CASE("solve writes summary and CSV outputs") {
  auto dir = scratch("solve");
  auto pts = dir.string() + "_pts.csv";
  {
    std::ofstream o(pts);
    o << "x,y,z\n3.5,0,0.2\n0,4,1\n";
  }
  auto cfg = parse_config(R"({"N": 41, "M": 3, "k": 1.0,
      "outputs": {"rcs": {"theta": [0, 90, 180], "phi": [0]}, "residual_stride": 4}})");
  cfg.output_dir = dir.string();
  cfg.outputs.points_file = pts;
  auto s = run_solve(cfg);
  CHECK(s["modes"].size() == 7);
  CHECK(fs::exists(dir / "summary.json"));
  std::ifstream f(dir / "fields.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,y,z,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReHx,ImHx,ReHy,ImHy,ReHz,ImHz");
  std::ifstream r(dir / "rcs.csv");
  std::getline(r, header);
  CHECK(header == "theta,phi,sigma");

  // deterministic apart from timings
  auto again = run_solve(cfg);
  s.erase("timings");
  again.erase("timings");
  CHECK(s == again);
}
