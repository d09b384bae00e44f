// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "tdem/commands.hpp"
#include "tdem/core_model.hpp"
#include "tdem/early_time.hpp"
#include "tdem/sphere_exact.hpp"
#include "tdem/surface_mesh.hpp"
#include "tdem/surface_modes.hpp"

using namespace tdem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void run(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.pass;
  std::string timing = " [" + fmt(secs) + " s";
  if (budget_s > 0.0) {
    timing += ", budget " + fmt(budget_s) + " s";
    if (secs > budget_s) {
      pass = false;
      timing += ", OVER BUDGET";
    }
  }
  timing += "]";
  if (!pass) ++failures;
  std::printf("%s  %d. %s: %s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

TargetParams with_ratio(double ratio) {
  TargetParams p;
  p.mu_c = ratio;
  p.mu_b = 1.0;
  return p;
}

double slope_on(double kappa, double x_lo, double x_hi) {
  // boundary_dH_dt as a positive decay; time window given in kappa^2 t
  std::vector<double> t, v;
  const double k2 = kappa * kappa;
  for (int i = 0; i < 41; ++i) {
    const double x = x_lo * std::pow(x_hi / x_lo, i / 40.0);
    t.push_back(x / k2);
    v.push_back(std::abs(boundary_dH_dt(x / k2, kappa)));
  }
  return fit_power_law(t, v, t.front(), t.back()).slope;
}

// Largest tau such that the early form stays within rel_tol of the exact
// series (relative to H_l(0)) for every grid point up to it.
double agreement_window(int l, double mu_ratio, double rel_tol, const std::vector<double>& taus) {
  const TargetParams p = with_ratio(mu_ratio);
  const DerivedTimescales d = derive_timescales(p);
  const SphereSpectrum s = find_roots(l, mu_ratio, 2000);
  const double h0 = H_l_zero(l, mu_ratio);
  double last = 0.0;
  for (double tau : taus) {
    const double err = std::abs(early_time_H_l(p, l, tau * d.tau_c) - H_l(s, tau).value) / h0;
    if (err >= rel_tol) break;
    last = tau;
  }
  return last;
}

} // namespace

int main() {
  run(1, "root degeneration at mu_c/mu_b = 1", 1.0, [] {
    const SphereSpectrum s = find_roots(1, 1.0, 50);
    double worst = 0.0;
    for (int n = 1; n <= 50; ++n) {
      // independent oracle: bisection on sin(zeta) around n pi
      const auto r = boost::math::tools::bisect([](double z) { return std::sin(z); },
                                                n * std::numbers::pi - 0.5, n * std::numbers::pi + 0.5,
                                                boost::math::tools::eps_tolerance<double>(50));
      const double oracle = 0.5 * (r.first + r.second);
      worst = std::max(worst, std::abs(s.roots[n - 1] - oracle));
    }
    return Outcome{worst < 1e-10 && s.size() == 50, "max |zeta_n - n pi| = " + fmt(worst) + " (tol 1e-10)"};
  });

  run(2, "series identity for H_l(0)", 0.0, [] {
    bool ok = true;
    double worst_ratio = 0.0;
    for (double ratio : {1.0, 5.0, 100.0})
      for (int l = 1; l <= 5; ++l) {
        const SphereSpectrum s = find_roots(l, ratio, 500);
        const SeriesValue v = H_l(s, 0.0);
        const double closed = 0.5 / ratio / (l + (l + 1) / ratio);
        const double gap = std::abs(v.value - closed);
        ok = ok && gap <= v.tail_bound;
        worst_ratio = std::max(worst_ratio, gap / v.tail_bound);
      }
    const double sixth = H_l_zero(1, 1.0);
    ok = ok && std::abs(sixth - 1.0 / 6.0) < 1e-15;
    return Outcome{ok, "max |sum - closed form| / tail bound = " + fmt(worst_ratio) +
                           ", H_1(0) at ratio 1 = " + fmt(sixth)};
  });

  run(3, "dual power law of the boundary derivative", 1.0, [] {
    bool ok = true;
    std::ostringstream os;
    for (double kappa : {1e-2, 1.0, 1e2}) {
      const double early = slope_on(kappa, 1e-4, 1e-2);
      const double late = slope_on(kappa, 1e2, 1e4);
      ok = ok && std::abs(early + 0.5) <= 0.02 && std::abs(late + 1.5) <= 0.02;
      os << "kappa " << kappa << ": " << fmt(early) << " / " << fmt(late) << "; ";
    }
    return Outcome{ok, os.str() + "tol 0.02"};
  });

  run(4, "crossover placement", 0.0, [] {
    bool ok = true;
    double worst_factor = 1.0;
    for (double kappa : {1e-2, 1.0, 1e2}) {
      std::vector<double> t, v;
      for (int i = 0; i <= 240; ++i) {
        const double x = std::pow(10.0, -6.0 + i * 12.0 / 240.0);
        t.push_back(x / (kappa * kappa));
        v.push_back(std::abs(boundary_dH_dt(t.back(), kappa)));
      }
      const double k2 = kappa * kappa;
      const FitReport r = fit_windows(t, v, {{1e-4 / k2, 1e-2 / k2}, {1e2 / k2, 1e4 / k2}});
      const double factor = *r.crossover_estimate * k2;
      worst_factor = std::max({worst_factor, factor, 1.0 / factor});
    }
    ok = worst_factor < 3.0;
    double worst_table = 0.0;
    for (double ratio : {1.0, 5.0, 100.0}) {
      const TargetParams p = with_ratio(ratio);
      const DerivedTimescales d = derive_timescales(p);
      for (const SphereModeLabels& m : sphere_mode_labels(p, 5))
        worst_table = std::max(worst_table, std::abs(m.crossover_time() * m.l * m.l / d.tau_mag - 1.0));
    }
    ok = ok && worst_table < 1e-14;
    return Outcome{ok, "worst intersection factor " + fmt(worst_factor) + " (tol 3), tau_cross l^2 / tau_mag - 1 = " +
                           fmt(worst_table)};
  });

  run(5, "early-time agreement with the exact sphere solution", 30.0, [] {
    std::vector<double> taus;
    for (int i = 0; i <= 600; ++i) taus.push_back(std::pow(10.0, -6.0 + i * 6.0 / 600.0));
    // ratio 1, l = 1: agreement within 5% up to tau = 0.05
    const TargetParams p1 = with_ratio(1.0);
    const DerivedTimescales d1 = derive_timescales(p1);
    const SphereSpectrum s1 = find_roots(1, 1.0, 2000);
    double worst = 0.0;
    for (double tau : taus)
      if (tau <= 0.05)
        worst = std::max(worst, std::abs(early_time_H_l(p1, 1, tau * d1.tau_c) - H_l(s1, tau).value) / H_l_zero(1, 1.0));
    const bool clause_a = worst < 0.05;
    // windows of agreement shrink at least as fast as 1/l^2
    std::vector<double> w;
    for (int l = 1; l <= 5; ++l) w.push_back(agreement_window(l, 1.0, 0.05, taus));
    bool clause_b = true;
    std::ostringstream ratios;
    for (int l = 2; l <= 5; ++l) {
      const double shrink = w[0] / w[l - 1];
      clause_b = clause_b && shrink >= double(l * l);
      ratios << (l > 2 ? ", " : "") << fmt(shrink) << " vs " << l * l;
    }
    // ratio 100: early and late-early within 1% for tau >= 1e-3
    const TargetParams p100 = with_ratio(100.0);
    const DerivedTimescales d100 = derive_timescales(p100);
    double worst100 = 0.0;
    for (int l = 1; l <= 5; ++l)
      for (double tau : taus)
        if (tau >= 1e-3)
          worst100 = std::max(worst100, std::abs(early_time_H_l(p100, l, tau * d100.tau_c) -
                                                 late_early_H_l(p100, l, tau * d100.tau_c)) /
                                            H_l_zero(l, 100.0));
    const bool clause_c = worst100 < 0.01;
    // all three panels as the CLI emits them
    for (int panel : kFig3Panels) (void)cmd_fig3(panel);
    return Outcome{clause_a && clause_b && clause_c,
                   "l=1 max error to tau 0.05 = " + fmt(worst) + " (tol 0.05); window shrink w1/wl = " +
                       ratios.str() + (clause_b ? "" : " (slower than 1/l^2)") +
                       "; ratio 100 early vs late-early max = " + fmt(worst100) + " (tol 0.01)"};
  });

  run(6, "PDE and Robin residuals of the profile kernel", 5.0, [] {
    double worst_pde = 0.0, worst_bc = 0.0;
    int points = 0;
    for (double kappa : {0.0, 0.1, 3.0, 100.0})
      for (double t : {1e-4, 1e-2, 0.3, 2.0, 50.0})
        for (double c : {0.05, 0.2, 0.5, 1.0, 2.0}) {
          const double Z = -c * std::sqrt(t);
          const PdeResidual r = pde_residual({Z, t, kappa}, 1e-4 * t, 1e-3 * std::sqrt(t));
          worst_pde = std::max(worst_pde, std::abs(r.residual) / std::abs(r.dt_term));
          ++points;
        }
    for (double kappa : {0.0, 0.1, 3.0, 100.0})
      for (double t : {1e-4, 1e-2, 0.3, 2.0, 50.0})
        worst_bc = std::max(worst_bc, std::abs(boundary_condition_value(t, kappa, 1e-4 * std::sqrt(t)) - 1.0));
    return Outcome{worst_pde < 1e-5 && worst_bc < 1e-5,
                   std::to_string(points) + " grid points, max PDE residual " + fmt(worst_pde) +
                       ", max Robin deviation " + fmt(worst_bc) + " (tol 1e-5)"};
  });

  run(7, "surface-mode solver convergence on icospheres", 300.0, [] {
    const TargetParams p = with_ratio(100.0);
    std::vector<double> e1, e2;
    bool mult_ok = true;
    double ntd_const = 0.0;
    for (int level = 2; level <= 4; ++level) {
      const SurfaceMesh mesh = make_icosphere(p.L_c, level);
      const SurfaceModeBasis b = solve_scalar_modes(mesh, p, 8);
      const std::vector<double> err = sphere_kappa_errors(b, 2);
      e1.push_back(err[0]);
      e2.push_back(err[1]);
      if (level == 4) {
        const std::vector<int> g = cluster_multiplets(b.kappa, 0.02);
        mult_ok = std::count(g.begin(), g.end(), 0) == 3 && std::count(g.begin(), g.end(), 1) == 5;
        const Eigen::VectorXd one = Eigen::VectorXd::Ones(b.ntd->rows());
        ntd_const = ((*b.ntd) * one).mean();
      }
    }
    const bool conv = e1[0] > e1[1] && e1[1] > e1[2] && e2[0] > e2[1] && e2[1] > e2[2];
    const double ntd_err = std::abs(ntd_const / p.L_c - 1.0);
    const bool ok = e1[2] < 0.05 && e2[2] < 0.05 && mult_ok && conv && ntd_err < 0.02;
    return Outcome{ok, "l=1 errors " + fmt(e1[0]) + " > " + fmt(e1[1]) + " > " + fmt(e1[2]) + ", l=2 errors " +
                           fmt(e2[0]) + " > " + fmt(e2[1]) + " > " + fmt(e2[2]) + " (tol 0.05), multiplicities " +
                           (mult_ok ? "3+5" : "wrong") + ", NtD(1)/L_c - 1 = " + fmt(ntd_err) + " (tol 0.02)"};
  });

  run(8, "timescale arithmetic for steel-like parameters", 0.0, [] {
    TargetParams p;
    p.mu_c = 100.0;
    p.sigma_c = 1e7;
    p.L_c = 0.05;
    const DerivedTimescales d = derive_timescales(p);
    const double ratio = d.tau_mag / d.tau_c;
    const bool ok = d.tau_c >= 0.1 && d.tau_c < 10.0 && std::abs(ratio - 1e-4) < 1e-18;
    return Outcome{ok, "tau_c = " + fmt(d.tau_c) + " s, tau_mag/tau_c = " + fmt(ratio)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
