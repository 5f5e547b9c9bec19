#include "bor/solver.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <chrono>
#include <cmath>
#include <string>


namespace bor {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

IncidentModes decompose_incident(const IncidentField& field, const Discretization& disc, int M,
                                 double alias_tol) {
  if (M < 0) throw InputError("M must be >= 0");
  const Grid& grid = disc.grid();
  const int n = grid.n;
  IncidentModes out;
  out.M = M;
  const size_t nm = static_cast<size_t>(2 * M + 1);
  out.Etau.assign(nm, CVec::Zero(n));
  out.Etheta.assign(nm, CVec::Zero(n));
  out.Hn.assign(nm, CVec::Zero(n));

  double total = 0.0, top = 0.0;
  for (int j = 0; j < n; ++j) {
    const CurvePoint& p = grid.nodes[j];
    RingModes rm = ring_modes(field, p.r, p.z, M);
    total += rm.energy;
    top += rm.top_energy;
    for (int m = -M; m <= M; ++m) {
      const size_t idx = static_cast<size_t>(m + M);
      out.Etau[idx][j] = p.dr * rm(0, m) + p.dz * rm(2, m);
      out.Etheta[idx][j] = rm(1, m);
      out.Hn[idx][j] = p.dz * rm(3, m) - p.dr * rm(5, m);
    }
  }
  out.top_mode_fraction = total > 0 ? top / total : 0.0;
  if (alias_tol > 0 && out.top_mode_fraction > alias_tol)
    throw InputError("incident field is not resolved by " + std::to_string(M) +
                     " azimuthal modes (top-mode energy fraction " +
                     std::to_string(out.top_mode_fraction) + "); increase M");
  out.a_circulation = grid.h * out.etau(0).sum();
  out.b_flux = disk_flux(field, disc.cycle().r_b, disc.cycle().z_b);
  out.b_circulation = loop_circulation(field, disc.cycle().r_b, disc.cycle().z_b);
  return out;
}

cplx disk_flux(const IncidentField& field, double r_b, double z_b) {
  using Rule = boost::math::quadrature::gauss<double, 48>;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  const double half = 0.5 * r_b;
  cplx acc = 0.0;
  auto add = [&](double rho, double w) { acc += w * rho * ring_modes(field, rho, z_b, 0)(5, 0); };
  for (size_t i = 0; i < xs.size(); ++i) {
    add(half * (1.0 + xs[i]), half * ws[i]);
    if (xs[i] != 0.0) add(half * (1.0 - xs[i]), half * ws[i]);
  }
  return kTwoPi * acc;
}

cplx loop_circulation(const IncidentField& field, double r_b, double z_b) {
  return kTwoPi * r_b * ring_modes(field, r_b, z_b, 0)(1, 0);
}

void meanzero_fix(ModeSystem& sys, const Grid& grid) {
  if (sys.m != 0 || sys.meanzero_fixed) return;
  const int n = grid.n;
  const RVec w = mean_weights(grid);
  sys.A.topLeftCorner(n, n) += (RVec::Ones(n) * w.transpose()).cast<cplx>();
  sys.meanzero_fixed = true;
}

ModeSystem assemble_system(const ModeOperators& op, const Discretization& disc,
                           const OperatorKernels& kernels, const IncidentModes& data, int m,
                           CycleRow row) {
  (void)kernels;
  const Grid& grid = disc.grid();
  const int n = grid.n;
  ModeSystem sys;
  sys.m = m;
  const int rows = op.nx;
  sys.A = CMat::Zero(rows, op.nx);
  sys.b = CVec::Zero(rows);
  sys.A.topRows(n) = op.KE;
  sys.A.middleRows(n, n) = op.KH;

  const CVec div_in = surf_div({data.etau(m), data.etheta(m)}, m, grid);
  sys.b.head(n) = -(op.S0 * div_in);
  sys.b.segment(n, n) = -data.hn(m);
  if (m == 0) {
    sys.A.row(2 * n) = op.cycleA;
    sys.b[2 * n] = -data.a_circulation;
    if (row == CycleRow::Stabilized) {
      sys.A.row(2 * n + 1) = op.cycleB;
      sys.b[2 * n + 1] = -kI * data.b_flux;
    } else {
      sys.A.row(2 * n + 1) = op.cycleB_naive;
      sys.b[2 * n + 1] = -data.b_circulation;
    }
  }
  return sys;
}

DebyeDensities solve_mode(const ModeSystem& sys, int n, ModeReport* report) {
  Eigen::PartialPivLU<CMat> lu(sys.A);
  const double rc = lu.rcond();
  if (!(rc > 1e-16)) throw SolverError("singular system for mode " + std::to_string(sys.m));
  CVec x = lu.solve(sys.b);
  const double bn = sys.b.norm();
  const double res = (sys.A * x - sys.b).norm() / (bn > 0 ? bn : 1.0);
  if (!std::isfinite(res)) throw SolverError("non-finite solution for mode " + std::to_string(sys.m));
  if (report) {
    report->m = sys.m;
    report->residual = res;
    report->rcond = rc;
  }
  DebyeDensities d;
  d.m = sys.m;
  d.rho = x.head(n);
  d.sigma = x.segment(n, n);
  if (sys.m == 0) {
    d.a1 = x[2 * n];
    d.a2 = x[2 * n + 1];
  }
  return d;
}

DebyeSolution solve_all(const IncidentField& field, const GeneratingCurve& curve,
                        const SolverOptions& opts) {
  auto disc = std::make_shared<const Discretization>(curve, opts.n, opts.order, opts.cycle_node);
  return solve_all(field, disc, opts);
}

DebyeSolution solve_all(const IncidentField& field, std::shared_ptr<const Discretization> disc,
                        const SolverOptions& opts) {
  if (field.k().imag() < 0) throw InputError("k must have Im k >= 0");
  const int M = opts.M;
  const int n = disc->n();
  const cplx k = field.k();
  DebyeSolution sol;
  sol.disc = disc;
  sol.k = k;
  sol.M = M;
  sol.modes.resize(static_cast<size_t>(2 * M + 1));
  sol.currents.resize(static_cast<size_t>(2 * M + 1));
  sol.etrace.resize(static_cast<size_t>(2 * M + 1));
  sol.reports.resize(static_cast<size_t>(2 * M + 1));

  auto t0 = std::chrono::steady_clock::now();
  IncidentModes data = decompose_incident(field, *disc, M, opts.alias_tol);
  sol.timings["incident"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  OperatorKernels kernels(*disc, k, M, opts.exec);
  sol.timings["kernels"] = seconds_since(t0);

  double t_assemble = 0.0, t_solve = 0.0;
  auto run = [&](int m) {
    auto ta = std::chrono::steady_clock::now();
    ModeOperators op = assemble_mode_operators(*disc, kernels, m, k);
    ModeSystem sys = assemble_system(op, *disc, kernels, data, m, opts.cycle_row);
    meanzero_fix(sys, disc->grid());
    const double da = seconds_since(ta);
    auto ts = std::chrono::steady_clock::now();
    const size_t idx = static_cast<size_t>(m + M);
    DebyeDensities d = solve_mode(sys, n, &sol.reports[idx]);
    const double ds = seconds_since(ts);
    CVec x = CVec::Zero(op.nx);
    x.head(n) = d.rho;
    x.segment(n, n) = d.sigma;
    if (m == 0) {
      x[2 * n] = d.a1;
      x[2 * n + 1] = d.a2;
    }
    Currents c;
    c.J.tau = op.Jtau * x;
    c.J.theta = op.Jtheta * x;
    c.K.tau = op.Ktau * x;
    c.K.theta = op.Ktheta * x;
    sol.etrace[idx] = {op.Etau * x, op.Etheta * x};
    sol.modes[idx] = std::move(d);
    sol.currents[idx] = std::move(c);
#pragma omp critical(bor_timing)
    {
      t_assemble += da;
      t_solve += ds;
    }
  };

  // m = 0 first: it carries the harmonic coefficients.
  run(0);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < 2 * M; ++p) {
    const int m = p < M ? p + 1 : M - 1 - p;
    try {
      run(m);
    } catch (...) {
#pragma omp critical(bor_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  sol.timings["assemble"] = t_assemble;
  sol.timings["solve"] = t_solve;
  return sol;
}

ConsistencyReport consistency(const DebyeSolution& sol, int m) {
  const Grid& grid = sol.disc->grid();
  const Currents& c = sol.current(m);
  const CVec& rho = sol.mode(m).rho;
  ConsistencyReport rep;
  const CVec div = surf_div(c.J, m, grid);
  const double rn = rho.norm();
  rep.divergence = (div - kI * sol.k * rho).norm() / (rn > 0 ? rn : 1.0);
  const ModalTangentField nx = n_cross(c.J);
  rep.n_cross = std::max((c.K.tau - nx.tau).cwiseAbs().maxCoeff(), (c.K.theta - nx.theta).cwiseAbs().maxCoeff());
  return rep;
}

double mode_condition(const Discretization& disc, cplx k, int m, bool fix, CycleRow row) {
  OperatorKernels kernels(disc, k, std::abs(m));
  ModeOperators op = assemble_mode_operators(disc, kernels, m, k);
  IncidentModes empty;
  empty.M = std::abs(m);
  empty.Etau.assign(static_cast<size_t>(2 * empty.M + 1), CVec::Zero(disc.n()));
  empty.Etheta = empty.Etau;
  empty.Hn = empty.Etau;
  ModeSystem sys = assemble_system(op, disc, kernels, empty, m, row);
  if (fix) meanzero_fix(sys, disc.grid());
  Eigen::JacobiSVD<CMat> svd(sys.A);
  const auto& s = svd.singularValues();
  return s[0] / s[s.size() - 1];
}

}  // namespace bor
