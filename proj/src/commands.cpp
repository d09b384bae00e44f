#include "tdem/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdem/errors.hpp"
#include "tdem/sphere_exact.hpp"
#include "tdem/surface_mesh.hpp"
#include "tdem/surface_modes.hpp"

namespace tdem {

namespace {

std::string column_tag(ModelTag m) {
  switch (m) {
    case ModelTag::Exact: return "exact";
    case ModelTag::Early: return "early";
    case ModelTag::AsymptoteEarly: return "asym_early";
    case ModelTag::AsymptoteLate: return "asym_late";
  }
  return "?";
}

} // namespace

CsvTable cmd_spectrum(const RunConfig& cfg) {
  const DerivedTimescales d = derive_timescales(cfg.target);
  CsvTable table({"l", "n", "zeta", "tau_decay", "kappa", "tau_cross"});
  for (int l = 1; l <= cfg.l_max; ++l) {
    const SphereSpectrum s = find_roots(l, cfg.target.mu_ratio(), cfg.roots);
    const double kappa = sphere_kappa(cfg.target, l);
    for (std::size_t n = 0; n < s.size(); ++n) {
      const double z = s.roots[n];
      table.add_row({std::to_string(l), std::to_string(n + 1), format_double(z),
                     format_double(d.tau_c / (z * z)), format_double(kappa),
                     format_double(1.0 / (kappa * kappa))});
    }
  }
  return table;
}

CsvTable cmd_decay(const RunConfig& cfg) {
  const TargetParams& p = cfg.target;
  const DerivedTimescales d = derive_timescales(p);
  const std::vector<double> times = cfg.time_grid();
  const double v_scale = 0.5 * std::sqrt(d.tau_c);  // tau_c (4 tau_c)^{-1/2}

  std::vector<std::string> header{"t", "tau"};
  std::vector<SphereSpectrum> spectra;
  for (int l = 1; l <= cfg.l_max; ++l) {
    const std::string L = std::to_string(l);
    for (ModelTag m : cfg.models) {
      header.push_back("H" + L + "_" + column_tag(m));
      if (m == ModelTag::Exact) header.push_back("H" + L + "_exact_tail");
    }
    for (ModelTag m : cfg.models) header.push_back("V" + L + "_" + column_tag(m));
    if (cfg.wants(ModelTag::Exact)) spectra.push_back(find_roots(l, p.mu_ratio(), cfg.roots));
  }

  CsvTable table(header);
  for (double t : times) {
    const double tau = t / d.tau_c;
    std::vector<double> row{t, tau};
    for (int l = 1; l <= cfg.l_max; ++l) {
      const double kappa = sphere_kappa(p, l);
      for (ModelTag m : cfg.models) {
        switch (m) {
          case ModelTag::Exact: {
            const SeriesValue h = H_l(spectra[static_cast<std::size_t>(l - 1)], tau);
            row.push_back(h.value);
            row.push_back(h.tail_bound);
            break;
          }
          case ModelTag::Early: row.push_back(early_time_H_l(p, l, t)); break;
          case ModelTag::AsymptoteEarly: row.push_back(early_early_H_l(p, l, t)); break;
          case ModelTag::AsymptoteLate: row.push_back(late_early_H_l(p, l, t)); break;
        }
      }
      for (ModelTag m : cfg.models) {
        switch (m) {
          case ModelTag::Exact:
            row.push_back(minus_dH_l_dtau(spectra[static_cast<std::size_t>(l - 1)], tau).value);
            break;
          case ModelTag::Early: row.push_back(early_time_V_l(p, l, t)); break;
          case ModelTag::AsymptoteEarly: row.push_back(v_scale * boundary_dH_dt_small_time(t)); break;
          case ModelTag::AsymptoteLate:
            row.push_back(v_scale * boundary_dH_dt_large_time(t, kappa));
            break;
        }
      }
    }
    table.add_row(row);
  }
  return table;
}

FitReport cmd_fit(const CsvTable& data, const std::vector<std::pair<double, double>>& windows,
                  const std::string& column) {
  const std::vector<double> t = data.numeric_column("t");
  const std::vector<double> v = data.numeric_column(column);
  return fit_windows(t, v, windows);
}

CsvTable fit_report_table(const FitReport& report) {
  CsvTable table({"window", "t_lo", "t_hi", "points", "slope", "slope_stderr", "intercept", "regime",
                  "crossover"});
  const std::string cross = report.crossover_estimate ? format_double(*report.crossover_estimate) : "";
  for (std::size_t i = 0; i < report.windows.size(); ++i) {
    const PowerLawFit& w = report.windows[i];
    table.add_row({std::to_string(i + 1), format_double(w.t_lo), format_double(w.t_hi),
                   std::to_string(w.points), format_double(w.slope), format_double(w.slope_stderr),
                   format_double(w.intercept), w.regime, cross});
  }
  return table;
}

CsvTable cmd_fig3(int panel, int points, int roots) {
  if (std::find(std::begin(kFig3Panels), std::end(kFig3Panels), panel) == std::end(kFig3Panels))
    throw ConfigError("panel: must be one of 1, 5, 100 (got " + std::to_string(panel) + ")");
  if (points < 2) throw ConfigError("points: must be >= 2");
  if (roots < 3) throw ConfigError("roots: must be >= 3");
  constexpr int kLMax = 5;
  TargetParams p;
  p.mu_b = 1.0;
  p.mu_c = panel;
  const DerivedTimescales d = derive_timescales(p);
  const bool late3 = panel == 1;

  std::vector<std::string> header{"tau"};
  std::vector<SphereSpectrum> spectra;
  for (int l = 1; l <= kLMax; ++l) {
    const std::string L = "H" + std::to_string(l) + "_";
    for (const char* c : {"exact", "early", "asym_early", "asym_late"}) header.push_back(L + c);
    if (late3) header.push_back(L + "late3");
    spectra.push_back(find_roots(l, p.mu_ratio(), roots));
  }

  CsvTable table(header);
  for (double tau : make_grid(1e-6, 1.0, points, Spacing::Log)) {
    const double t = tau * d.tau_c;
    std::vector<double> row{tau};
    for (int l = 1; l <= kLMax; ++l) {
      const SphereSpectrum& s = spectra[static_cast<std::size_t>(l - 1)];
      row.push_back(H_l(s, tau).value);
      row.push_back(early_time_H_l(p, l, t));
      row.push_back(early_early_H_l(p, l, t));
      row.push_back(late_early_H_l(p, l, t));
      if (late3) row.push_back(H_l_truncated(s, tau, 3));
    }
    table.add_row(row);
  }
  return table;
}

CsvTable cmd_modes(const RunConfig& cfg) {
  const SurfaceMesh mesh = cfg.mesh ? read_off(std::filesystem::path(*cfg.mesh))
                                    : make_icosphere(cfg.target.L_c, cfg.mesh_level);
  const SurfaceModeBasis basis = solve_surface_modes(mesh, cfg.target, cfg.modes);

  const SurfaceMesh::SphereFit fit = mesh.sphere_fit();
  const bool sphere = fit.max_relative_deviation < 1e-3;
  TargetParams ref = cfg.target;
  ref.L_c = fit.radius;

  std::vector<std::string> header{"n", "kappa", "multiplet", "multiplet_size", "lambda"};
  if (sphere)
    for (const char* c : {"kappa_analytic", "rel_error", "lambda_analytic", "lambda_rel_error"})
      header.emplace_back(c);
  CsvTable table(header);

  const std::vector<int> group = cluster_multiplets(basis.kappa);
  const DerivedTimescales d = derive_timescales(ref);
  for (std::size_t i = 0; i < basis.kappa.size(); ++i) {
    const auto size = std::count(group.begin(), group.end(), group[i]);
    std::vector<std::string> row{std::to_string(i + 1), format_double(basis.kappa[i]),
                                 std::to_string(group[i] + 1), std::to_string(size),
                                 format_double(basis.lambda[i])};
    if (sphere) {
      const int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(i) + 1.0) + 1e-12));
      const double ka = sphere_kappa(ref, l);
      const double la = l * (l + 1.0) / (ref.L_c * ref.L_c * ref.mu_c * std::sqrt(d.D_c));
      row.push_back(format_double(ka));
      row.push_back(format_double(std::abs(basis.kappa[i] - ka) / ka));
      row.push_back(format_double(la));
      row.push_back(format_double(std::abs(basis.lambda[i] - la) / la));
    }
    table.add_row(std::move(row));
  }
  return table;
}

} // namespace tdem
