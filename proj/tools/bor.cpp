// Command-line driver: solve, sweep-k, converge, kernel-probe.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <omp.h>

#include "CLI11.hpp"

#include "bor/run.hpp"

namespace {

struct Overrides {
  std::optional<int> N, M, order, workers;
  std::optional<double> k_re, k_im;
  std::optional<std::string> output_dir;
};

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--N", o.N, "number of nodes on the generating curve (odd)");
  app->add_option("--M", o.M, "highest azimuthal mode");
  app->add_option("--order", o.order, "quadrature order (2, 6, 10, 16)");
  app->add_option("--k", o.k_re, "wavenumber, real part");
  app->add_option("--k-imag", o.k_im, "wavenumber, imaginary part");
  app->add_option("--output-dir", o.output_dir, "directory for summary and tables");
  app->add_option("--workers", o.workers, "OpenMP threads (overrides BOR_WORKERS)");
}

bor::RunConfig configure(const std::string& path, const Overrides& o) {
  bor::RunConfig c = path.empty() ? bor::parse_config("{}") : bor::load_config(path);
  if (o.N) c.N = *o.N;
  if (o.M) c.M = *o.M;
  if (o.order) c.order = *o.order;
  if (o.k_re || o.k_im) c.k = {o.k_re.value_or(c.k.real()), o.k_im.value_or(c.k.imag())};
  if (o.output_dir) c.output_dir = *o.output_dir;
  int workers = c.workers;
  if (const char* env = std::getenv("BOR_WORKERS")) workers = std::atoi(env);
  if (o.workers) workers = *o.workers;
  if (workers < 0) throw bor::InputError("workers: must be >= 0");
  c.workers = workers;
  if (workers > 0) omp_set_num_threads(workers);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electromagnetic scattering from axisymmetric PEC bodies with generalized Debye sources"};
  app.require_subcommand(1);

  std::string config;
  Overrides ov;
  auto* solve = app.add_subcommand("solve", "single solve; writes summary.json, fields.csv, rcs.csv");
  solve->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  add_overrides(solve, ov);
  auto* sweep = app.add_subcommand("sweep-k", "solve for every sweep.k value; writes sweep.json");
  sweep->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  add_overrides(sweep, ov);
  auto* conv = app.add_subcommand("converge", "solve for every converge.N value; writes convergence.json");
  conv->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  add_overrides(conv, ov);
  std::vector<int> n_list;
  conv->add_option("--N-list", n_list, "override converge.N");

  auto* probe = app.add_subcommand("kernel-probe", "print modal Green's function values as JSON");
  double r = 2.0, z = 0.0, rp = 1.5, zp = 0.5, kr = 1.0, ki = 0.0;
  int pm = 8;
  probe->add_option("--r", r, "target r");
  probe->add_option("--z", z, "target z");
  probe->add_option("--rp", rp, "source r'");
  probe->add_option("--zp", zp, "source z'");
  probe->add_option("--k", kr, "wavenumber, real part");
  probe->add_option("--k-imag", ki, "wavenumber, imaginary part");
  probe->add_option("--M", pm, "highest mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const char* stage = "config";
  try {
    if (probe->parsed()) {
      stage = "kernel-probe";
      std::cout << bor::kernel_probe(r, z, rp, zp, {kr, ki}, pm).dump(2) << "\n";
      return 0;
    }
    bor::RunConfig cfg = configure(config, ov);
    if (!n_list.empty()) cfg.converge_N = n_list;
    bor::validate(cfg);
    nlohmann::json out;
    if (solve->parsed()) {
      stage = "solve";
      out = bor::run_solve(cfg);
      out.erase("modes");
    } else if (sweep->parsed()) {
      stage = "sweep-k";
      out = nlohmann::json::object();
      for (const auto& rec : bor::run_sweep_k(cfg)["records"])
        out["records"].push_back({{"k", rec["k"]}, {"max_residual", rec["max_residual"]},
                                  {"max_condition_estimate", rec["max_condition_estimate"]}});
    } else {
      stage = "converge";
      out = bor::run_convergence(cfg);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const bor::InputError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage, e.what());
    return 2;
  } catch (const bor::SolverError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage, e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage, e.what());
    return 1;
  }
}
