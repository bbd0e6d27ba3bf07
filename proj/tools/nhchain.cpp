// Command-line front end: parse a JSON run configuration, dispatch to the
// library, and emit deterministic CSV/JSON tables, SVG plots, and metadata
// sidecars. Exit codes: 0 ok, 2 configuration error, 3 numerical error,
// 4 reproduction-threshold failure.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhchain/config.hpp"
#include "nhchain/csv.hpp"
#include "nhchain/dynamics.hpp"
#include "nhchain/model.hpp"
#include "nhchain/optimize.hpp"
#include "nhchain/scattering.hpp"
#include "nhchain/spectral.hpp"
#include "nhchain/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nhchain;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0; // 0 = hardware concurrency
  std::string format = "csv";
};

json number_cell(double v) {
  if (std::isfinite(v)) return v;
  return csv::format_number(v); // "inf" / "-inf" / "nan" as literal strings
}

// One tabular output, written as <stem>.csv or <stem>.json per --format.
void write_table(const fs::path& dir, const std::string& stem,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows,
                 const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < header.size(); ++i)
        obj[header[i]] = number_cell(row[i]);
      arr.push_back(obj);
    }
    std::ofstream out(dir / (stem + ".json"), std::ios::binary);
    out << arr.dump(2) << '\n';
  } else {
    csv::Writer w(header);
    for (const auto& row : rows) w.add_row(row);
    w.write(dir / (stem + ".csv"));
  }
}

json conventions() {
  return json{
      {"mode_ordering", "a_1, b_1, a_2, b_2, ..., a_n, b_n"},
      {"coupling_sign", "reducible shorthand uses w > 0 by default; the "
                        "winding is +1 at delta/v = 1 with this sign"},
      {"contrast", "100 * (T_fwd - T_bwd) / (T_fwd + T_bwd)"},
      {"response_matrix", "steady-state response uses H + i*v*I + M_gamma "
                          "(uniform on-site loss included)"},
      {"launch_phase", "channel-pure default: b/a phase +pi/2 forward, "
                       "-pi/2 backward; override with dynamics.phase"},
      {"infinities", "serialized as the literal strings inf/-inf"},
  };
}

void write_meta(const fs::path& dir, const std::string& command,
                const config::RunConfig& cfg, const json& extra) {
  json meta{{"command", command},
            {"config", cfg.to_json()},
            {"conventions", conventions()}};
  if (!extra.is_null()) meta["results"] = extra;
  std::ofstream out(dir / (command + "_meta.json"), std::ios::binary);
  out << meta.dump(2) << '\n';
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1.0);
  return grid;
}

config::RunConfig load_config(const GlobalOpts& g, bool required) {
  if (g.config_path.empty()) {
    if (required)
      throw ConfigError("--config PATH is required for this subcommand");
    return config::RunConfig{};
  }
  return config::RunConfig::from_file(g.config_path);
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOutcome {
  spectral::SpectrumResult spectrum;
  double hausdorff = 0.0;
};

SpectrumOutcome run_spectrum(const config::RunConfig& cfg, const fs::path& dir,
                             const GlobalOpts& g) {
  fs::create_directories(dir);
  ChainParams obc = cfg.model;
  obc.bc = Boundary::Open;

  SpectrumOutcome out;
  out.spectrum = spectral::diagonalize(model::build_real_space(obc));
  const auto locus = spectral::pbc_locus(cfg.model, cfg.spectrum.k_samples);

  std::vector<std::vector<double>> spec_rows;
  for (int m = 0; m < out.spectrum.modes(); ++m)
    spec_rows.push_back({static_cast<double>(m),
                         out.spectrum.eigenvalues(m).real(),
                         out.spectrum.eigenvalues(m).imag(),
                         out.spectrum.residuals(m)});
  write_table(dir, "obc_spectrum", {"index", "re_E", "im_E", "residual"},
              spec_rows, g.format);

  std::vector<std::vector<double>> prof_rows;
  for (int m = 0; m < out.spectrum.modes(); ++m)
    for (int j = 1; j <= cfg.model.n; ++j)
      prof_rows.push_back({static_cast<double>(m), static_cast<double>(j),
                           out.spectrum.profiles(m, j - 1)});
  write_table(dir, "profiles", {"mode_index", "unit", "population"}, prof_rows,
              g.format);

  std::vector<std::vector<double>> locus_rows;
  for (const auto& pt : locus)
    locus_rows.push_back({pt.k, pt.band[0].real(), pt.band[0].imag(),
                          pt.band[1].real(), pt.band[1].imag()});
  write_table(dir, "pbc_locus",
              {"k", "re_E_band0", "im_E_band0", "re_E_band1", "im_E_band1"},
              locus_rows, g.format);

  std::vector<Complex> locus_points, obc_points;
  for (const auto& pt : locus) {
    locus_points.push_back(pt.band[0]);
    locus_points.push_back(pt.band[1]);
  }
  for (int m = 0; m < out.spectrum.modes(); ++m)
    obc_points.push_back(out.spectrum.eigenvalues(m));
  out.hausdorff = spectral::hausdorff_distance(locus_points, obc_points);

  svg::Plot plot("Complex spectrum", "Re E", "Im E");
  for (int band = 0; band < 2; ++band) {
    svg::Series s;
    s.color = "#1f77b4";
    for (const auto& pt : locus) {
      s.x.push_back(pt.band[band].real());
      s.y.push_back(pt.band[band].imag());
    }
    plot.add(std::move(s));
  }
  svg::Series dots;
  dots.scatter = true;
  dots.color = "#000000";
  for (const Complex& e : obc_points) {
    dots.x.push_back(e.real());
    dots.y.push_back(e.imag());
  }
  plot.add(std::move(dots));
  plot.write(dir / "spectrum.svg");

  write_meta(dir, "spectrum", cfg,
             json{{"hausdorff_pbc_obc", out.hausdorff},
                  {"max_residual", out.spectrum.residuals.maxCoeff()}});
  return out;
}

// ----------------------------------------------------------------- winding

spectral::WindingResult run_winding(const config::RunConfig& cfg,
                                    const fs::path& dir, const GlobalOpts& g) {
  (void)g;
  fs::create_directories(dir);
  Complex base;
  bool automatic = false;
  if (cfg.winding.base_point) {
    base = *cfg.winding.base_point;
  } else {
    const auto found =
        spectral::auto_base_point(cfg.model, cfg.winding.k_samples);
    if (!found)
      throw NumericalError(
          "winding: no band loop encloses its centroid (open-arc regime); "
          "supply winding.base_point explicitly");
    base = *found;
    automatic = true;
  }
  const auto w =
      spectral::winding_number(cfg.model, base, cfg.winding.k_samples);

  json result{{"W", w.winding},
              {"raw_phase", w.raw_phase},
              {"base_point", json::array({base.real(), base.imag()})},
              {"base_point_automatic", automatic},
              {"k_samples", w.k_samples}};
  std::ofstream(dir / "winding.json", std::ios::binary) << result.dump(2) << '\n';

  const auto locus = spectral::pbc_locus(cfg.model, cfg.winding.k_samples);
  svg::Plot plot("Spectral locus and base point", "Re E", "Im E");
  for (int band = 0; band < 2; ++band) {
    svg::Series s;
    s.color = "#1f77b4";
    for (const auto& pt : locus) {
      s.x.push_back(pt.band[band].real());
      s.y.push_back(pt.band[band].imag());
    }
    plot.add(std::move(s));
  }
  plot.add({{base.real()}, {base.imag()}, "#d62728", true});
  plot.write(dir / "winding.svg");

  write_meta(dir, "winding", cfg, result);
  return w;
}

// ---------------------------------------------------------------- dynamics

struct DynamicsOutcome {
  double max_far_edge = 0.0;   // peak occupation on the non-launch edge unit
  double max_imbalance = 0.0;  // peak per-unit | |a|^2 - |b|^2 |
};

DynamicsOutcome run_dynamics(const config::RunConfig& cfg, const fs::path& dir,
                             const GlobalOpts& g) {
  fs::create_directories(dir);
  const ChainParams& p = cfg.model;
  const bool fwd = cfg.dynamics.forward;
  const double phase = cfg.dynamics.phase
                           ? *cfg.dynamics.phase
                           : dynamics::transmitting_phase(p, fwd);
  const Vector init = dynamics::unit_state(p.n, fwd ? 1 : p.n, phase);
  const auto integrator = cfg.dynamics.integrator == "rk45"
                              ? dynamics::Integrator::RungeKutta
                              : dynamics::Integrator::MatrixExp;
  const auto traj =
      dynamics::evolve(p, init, cfg.dynamics.t_max, cfg.dynamics.dt_out,
                       integrator, cfg.dynamics.include_ports);

  std::vector<std::string> header{"t"};
  for (int j = 1; j <= p.n; ++j) {
    header.push_back("occ_a_" + std::to_string(j));
    header.push_back("occ_b_" + std::to_string(j));
  }
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < traj.samples(); ++s) {
    std::vector<double> row{traj.times[s]};
    for (int j = 1; j <= p.n; ++j) {
      row.push_back(traj.occupation_a(s, j));
      row.push_back(traj.occupation_b(s, j));
    }
    rows.push_back(std::move(row));
  }
  write_table(dir, "trajectory", header, rows, g.format);

  if (cfg.dynamics.snapshot_time) {
    const auto shot = dynamics::snapshot(traj, *cfg.dynamics.snapshot_time);
    std::vector<std::vector<double>> srows;
    for (const auto& u : shot)
      srows.push_back({static_cast<double>(u.unit), u.occ_a, u.occ_b});
    write_table(dir, "snapshot", {"unit", "occ_a", "occ_b"}, srows, g.format);
  }

  DynamicsOutcome out;
  const int far = fwd ? p.n : 1; // edge unit opposite to the launch
  for (int s = 0; s < traj.samples(); ++s) {
    out.max_far_edge = std::max({out.max_far_edge, traj.occupation_a(s, far),
                                 traj.occupation_b(s, far)});
    for (int j = 1; j <= p.n; ++j)
      out.max_imbalance =
          std::max(out.max_imbalance,
                   std::abs(traj.occupation_a(s, j) - traj.occupation_b(s, j)));
  }

  svg::Plot plot("Occupation vs time", "t", "occupation");
  auto unit_series = [&](int j, const std::string& color) {
    svg::Series s;
    s.color = color;
    for (int i = 0; i < traj.samples(); ++i) {
      s.x.push_back(traj.times[i]);
      s.y.push_back(traj.occupation_a(i, j) + traj.occupation_b(i, j));
    }
    return s;
  };
  plot.add(unit_series(1, "#1f77b4"));
  if (p.n > 1) plot.add(unit_series(p.n, "#d62728"));
  svg::Series total;
  total.color = "#2ca02c";
  for (int i = 0; i < traj.samples(); ++i) {
    total.x.push_back(traj.times[i]);
    total.y.push_back(traj.total_occupation(i));
  }
  plot.add(std::move(total));
  plot.write(dir / "dynamics.svg");

  write_meta(dir, "dynamics", cfg,
             json{{"direction", fwd ? "forward" : "backward"},
                  {"launch_phase", phase},
                  {"max_far_edge_occupation", out.max_far_edge},
                  {"max_sublattice_imbalance", out.max_imbalance},
                  {"final_total_occupation",
                   traj.total_occupation(traj.samples() - 1)}});
  return out;
}

// --------------------------------------------------------------- scattering

std::vector<scattering::SweepRow> run_scattering(const config::RunConfig& cfg,
                                                 const fs::path& dir,
                                                 const GlobalOpts& g) {
  fs::create_directories(dir);
  const auto grid = linspace(cfg.scattering.grid_min, cfg.scattering.grid_max,
                             cfg.scattering.grid_count);
  const auto rows =
      scattering::sweep_transmission(cfg.model, grid, g.threads);

  std::vector<std::vector<double>> table;
  for (const auto& r : rows)
    table.push_back({r.delta_over_v, r.t_fwd, r.t_bwd, r.t_fwd_norm,
                     r.t_bwd_norm, r.ratio_numeric, r.ratio_analytic,
                     r.contrast_percent});
  write_table(dir, "transmission_sweep",
              {"delta_over_v", "T_fwd", "T_bwd", "T_fwd_norm", "T_bwd_norm",
               "ratio_numeric", "ratio_analytic", "contrast_percent"},
              table, g.format);

  svg::Plot plot("Normalized transmission", "delta/v", "T / T_max");
  svg::Series sf, sb;
  sf.color = "#1f77b4";
  sb.color = "#d62728";
  for (const auto& r : rows) {
    sf.x.push_back(r.delta_over_v);
    sf.y.push_back(r.t_fwd_norm);
    sb.x.push_back(r.delta_over_v);
    sb.y.push_back(r.t_bwd_norm);
  }
  plot.add(std::move(sf));
  plot.add(std::move(sb));
  plot.write(dir / "scattering.svg");

  double worst_rel = 0.0;
  for (const auto& r : rows)
    if (std::isfinite(r.ratio_analytic) && r.ratio_analytic != 0.0)
      worst_rel = std::max(worst_rel,
                           std::abs(r.ratio_numeric - r.ratio_analytic) /
                               std::abs(r.ratio_analytic));
  write_meta(dir, "scattering", cfg,
             json{{"max_relative_ratio_error", worst_rel}});
  return rows;
}

// ----------------------------------------------------------------- optimize

struct OptimizeOutcome {
  std::vector<optimize::OptimumRecord> records;
  std::optional<optimize::PlateauReport> plateau;
};

OptimizeOutcome run_optimize(const config::RunConfig& cfg, const fs::path& dir,
                             const GlobalOpts& g) {
  fs::create_directories(dir);
  OptimizeOutcome out;
  out.records = optimize::sweep_n(cfg.optimize.n_min, cfg.optimize.n_max,
                                  cfg.optimize.tolerance, g.threads);
  if (out.records.back().n >= 16)
    out.plateau = optimize::plateau_check(out.records);

  std::vector<std::vector<double>> table;
  for (const auto& r : out.records)
    table.push_back({static_cast<double>(r.n), r.w_over_v, r.v_over_gamma,
                     r.t_max, r.insertion_loss_db, r.contrast_percent,
                     r.converged ? 1.0 : 0.0});
  write_table(dir, "optimize",
              {"n", "w_over_v_opt", "v_over_gamma_opt", "T_max", "L_db",
               "contrast_percent", "converged"},
              table, g.format);

  svg::Plot plot("Optimized forward transmission", "n", "value");
  svg::Series st, sw, sg;
  st.color = "#1f77b4";
  sw.color = "#d62728";
  sg.color = "#2ca02c";
  for (const auto& r : out.records) {
    st.x.push_back(r.n);
    st.y.push_back(r.t_max);
    sw.x.push_back(r.n);
    sw.y.push_back(r.w_over_v);
    sg.x.push_back(r.n);
    sg.y.push_back(r.v_over_gamma);
  }
  plot.add(std::move(st));
  plot.add(std::move(sw));
  plot.add(std::move(sg));
  plot.write(dir / "optimize.svg");

  json extra;
  if (out.plateau) {
    extra = json{{"extrapolated_t_max", out.plateau->extrapolated_t_max},
                 {"extrapolated_loss_db", out.plateau->extrapolated_loss_db},
                 {"extrapolated_w_over_v", out.plateau->extrapolated_w_over_v},
                 {"extrapolated_v_over_gamma",
                  out.plateau->extrapolated_v_over_gamma},
                 {"differences_decreasing", out.plateau->differences_decreasing},
                 {"approach_direction", out.plateau->approach_direction}};
  }
  write_meta(dir, "optimize", cfg, extra);
  return out;
}

// ---------------------------------------------------------------- reproduce

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string threshold;
};

json make_config_json(int n, double delta, double v, double w, double gamma,
                      const json& extra = json::object()) {
  json j{{"model",
          {{"n", n}, {"delta", delta}, {"v", v}, {"w", w}, {"gamma", gamma}}}};
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

int finish_report(const fs::path& dir, const std::string& figure,
                  std::vector<Check> checks) {
  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    std::printf("%s: %s (value %s, threshold %s)\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", csv::format_number(c.value).c_str(),
                c.threshold.c_str());
    arr.push_back(json{{"name", c.name},
                       {"pass", c.pass},
                       {"value", number_cell(c.value)},
                       {"threshold", c.threshold}});
  }
  std::ofstream(dir / "report.json", std::ios::binary)
      << json{{"figure", figure}, {"all_passed", all}, {"checks", arr}}.dump(2)
      << '\n';
  std::printf("%s: %s\n", figure.c_str(), all ? "all checks passed"
                                              : "threshold failure");
  return all ? 0 : 4;
}

int reproduce_fig2(const fs::path& dir, const GlobalOpts& g) {
  std::vector<Check> checks;
  const struct {
    const char* tag;
    double ratio;
    Complex base;
    int expected_w;
    spectral::Localization expected_loc;
  } cases[] = {
      {"dv_plus1", 1.0, {1.0, 0.0}, 1, spectral::Localization::Left},
      {"dv_minus1", -1.0, {1.0, 0.0}, -1, spectral::Localization::Right},
      {"dv_zero", 0.0, {1.0, 1.0}, 0, spectral::Localization::Extended},
  };
  for (const auto& c : cases) {
    const auto cfg = config::RunConfig::from_json(make_config_json(
        10, -c.ratio, -1.0, 1.0, 0.0,
        json{{"winding",
              {{"k_samples", 1024},
               {"base_point", json::array({c.base.real(), c.base.imag()})}}},
             {"model", {{"n", 10}, {"delta", -c.ratio}, {"v", -1.0}, {"w", 1.0},
                        {"bc", "pbc"}}}}));
    const fs::path sub = dir / c.tag;
    const auto spec = run_spectrum(cfg, sub, g);
    const auto w = run_winding(cfg, sub, g);
    checks.push_back({std::string("winding ") + c.tag,
                      w.winding == c.expected_w &&
                          std::abs(w.raw_phase - c.expected_w) <= 1e-3,
                      static_cast<double>(w.winding),
                      "W = " + std::to_string(c.expected_w)});
    const auto loc = spectral::localization_summary(spec.spectrum, 10);
    checks.push_back({std::string("localization ") + c.tag,
                      loc.verdict == c.expected_loc, loc.mean_center,
                      "center-of-mass verdict"});
    if (c.ratio == 1.0) {
      double worst = 0.0;
      for (int m = 0; m < spec.spectrum.modes(); ++m) {
        const Complex e = spec.spectrum.eigenvalues(m);
        worst = std::max(worst, std::min({std::abs(e), std::abs(e - 2.0),
                                          std::abs(e + 2.0)}));
      }
      checks.push_back({"eigenvalue clusters dv_plus1", worst <= 0.2, worst,
                        "<= 0.2 from {-2, 0, 2}"});
    }
    if (c.ratio == 0.0) {
      // the open chain keeps one pair of topological mid-gap modes at E = 0;
      // coincidence with the periodic locus is a statement about the bulk
      const auto locus = spectral::pbc_locus(cfg.model, 1024);
      std::vector<Complex> locus_points;
      for (const auto& pt : locus) {
        locus_points.push_back(pt.band[0]);
        locus_points.push_back(pt.band[1]);
      }
      int edge_modes = 0;
      double worst_bulk = 0.0;
      for (int m = 0; m < spec.spectrum.modes(); ++m) {
        const Complex e = spec.spectrum.eigenvalues(m);
        // the mid-gap pair carries a finite-size splitting (~2e-3 at n = 10)
        // while the nearest bulk mode sits at |E| ~ 1.7
        if (std::abs(e) <= 0.1) {
          ++edge_modes;
          continue;
        }
        double nearest = std::numeric_limits<double>::infinity();
        for (const Complex& q : locus_points)
          nearest = std::min(nearest, std::abs(e - q));
        worst_bulk = std::max(worst_bulk, nearest);
      }
      checks.push_back({"bulk pbc/obc coincidence dv_zero",
                        worst_bulk <= 0.2 && edge_modes == 2, worst_bulk,
                        "bulk distance <= 0.2 with one E=0 edge pair (n = 10)"});
    }
  }
  return finish_report(dir, "fig2", std::move(checks));
}

int reproduce_fig3(const fs::path& dir, const GlobalOpts& g) {
  std::vector<Check> checks;
  // closed-chain dynamics at gamma = 0.1, v/gamma = -1, delta/v = -1, |w/v| = 0.5
  for (const bool forward : {false, true}) {
    auto cfg = config::RunConfig::from_json(make_config_json(
        5, 0.1, -0.1, 0.05, 0.1,
        json{{"dynamics",
              {{"t_max", 60.0},
               {"dt_out", 0.1},
               {"direction", forward ? "forward" : "backward"},
               {"snapshot_time", 60.0}}}}));
    const auto out =
        run_dynamics(cfg, dir / (forward ? "forward" : "backward"), g);
    if (forward)
      checks.push_back({"forward sublattice balance", out.max_imbalance <= 1e-9,
                        out.max_imbalance, "max | |a|^2 - |b|^2 | <= 1e-9"});
    else
      checks.push_back({"backward blockade", out.max_far_edge <= 1e-12,
                        out.max_far_edge, "leftmost occupation <= 1e-12"});
  }
  // steady-state sweep at v = -1, v/gamma = -1
  const auto scfg = config::RunConfig::from_json(make_config_json(
      5, 0.0, -1.0, 0.5, 1.0,
      json{{"scattering",
            {{"grid_min", -0.95}, {"grid_max", 0.95}, {"grid_count", 25}}}}));
  const auto rows = run_scattering(scfg, dir / "sweep", g);
  double worst = 0.0, best_fwd = -1.0, at_fwd = 0.0;
  double best_contrast = -200.0, at_contrast = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.ratio_numeric - r.ratio_analytic) /
                                std::abs(r.ratio_analytic));
    if (r.t_fwd > best_fwd) {
      best_fwd = r.t_fwd;
      at_fwd = r.delta_over_v;
    }
    if (r.contrast_percent > best_contrast) {
      best_contrast = r.contrast_percent;
      at_contrast = r.delta_over_v;
    }
  }
  checks.push_back({"ratio vs analytic", worst <= 1e-6, worst,
                    "relative error <= 1e-6"});
  // the forward/backward contrast is extremal at the grid edge nearest the
  // unidirectional point delta/v = -1; the absolute forward transmission
  // peaks slightly inside it
  checks.push_back({"contrast peak location",
                    at_contrast == rows.front().delta_over_v, at_contrast,
                    "contrast maximal at the most negative delta/v"});
  checks.push_back({"forward peak location",
                    std::abs(at_fwd - rows.front().delta_over_v) <= 0.2, at_fwd,
                    "T_fwd maximal within 0.2 of the most negative delta/v"});
  return finish_report(dir, "fig3", std::move(checks));
}

int reproduce_fig4(const fs::path& dir, const GlobalOpts& g) {
  const auto cfg = config::RunConfig::from_json(json{
      {"model", {{"n", 2}}},
      {"optimize", {{"n_min", 2}, {"n_max", 20}, {"tolerance", 1e-6}}}});
  const auto out = run_optimize(cfg, dir, g);
  const auto& plateau = *out.plateau;
  const auto& last = out.records.back();
  std::vector<Check> checks{
      {"T_max limit", std::abs(plateau.extrapolated_t_max - 0.84) <= 0.01,
       plateau.extrapolated_t_max, "0.84 +/- 0.01"},
      {"insertion loss limit",
       std::abs(plateau.extrapolated_loss_db - 0.76) <= 0.02,
       plateau.extrapolated_loss_db, "0.76 +/- 0.02 dB"},
      {"w/v limit", std::abs(plateau.extrapolated_w_over_v - 0.50) <= 0.02,
       plateau.extrapolated_w_over_v, "0.50 +/- 0.02"},
      {"v/gamma limit",
       std::abs(plateau.extrapolated_v_over_gamma - 0.71) <= 0.02,
       plateau.extrapolated_v_over_gamma, "0.71 +/- 0.02"},
      {"contrast", std::abs(last.contrast_percent - 100.0) <= 1e-6,
       last.contrast_percent, "100% +/- 1e-6"},
      {"loss identity",
       std::abs(last.insertion_loss_db + 10.0 * std::log10(last.t_max)) <= 1e-9,
       last.insertion_loss_db, "L = -10 log10(T_max) +/- 1e-9"},
  };
  return finish_report(dir, "fig4", std::move(checks));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nhchain: dissipatively coupled chain simulator"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON run configuration file");
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_option("--format", g.format, "table output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "OBC spectrum, PBC locus, mode profiles");
  auto* cmd_winding =
      app.add_subcommand("winding", "point-gap winding number of the locus");
  auto* cmd_dynamics =
      app.add_subcommand("dynamics", "time evolution of a launched excitation");
  auto* cmd_scattering =
      app.add_subcommand("scattering", "steady-state transmission sweep");
  auto* cmd_optimize =
      app.add_subcommand("optimize", "transmission optimum per chain length");
  auto* cmd_reproduce =
      app.add_subcommand("reproduce", "run a bundled scenario and check thresholds");
  std::string figure;
  cmd_reproduce->add_option("figure", figure, "scenario id")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  for (auto* sub : {cmd_spectrum, cmd_winding, cmd_dynamics, cmd_scattering,
                    cmd_optimize, cmd_reproduce})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const fs::path out_dir{g.out_dir};
    if (cmd_spectrum->parsed()) {
      run_spectrum(load_config(g, true), out_dir, g);
    } else if (cmd_winding->parsed()) {
      run_winding(load_config(g, true), out_dir, g);
    } else if (cmd_dynamics->parsed()) {
      run_dynamics(load_config(g, true), out_dir, g);
    } else if (cmd_scattering->parsed()) {
      run_scattering(load_config(g, true), out_dir, g);
    } else if (cmd_optimize->parsed()) {
      run_optimize(load_config(g, false), out_dir, g);
    } else if (cmd_reproduce->parsed()) {
      fs::create_directories(out_dir / figure);
      if (figure == "fig2") return reproduce_fig2(out_dir / figure, g);
      if (figure == "fig3") return reproduce_fig3(out_dir / figure, g);
      return reproduce_fig4(out_dir / figure, g);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  }
  return 0;
}
