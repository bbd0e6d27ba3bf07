#include "nhchain/scattering.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nhchain/model.hpp"
#include "nhchain/parallel.hpp"

namespace nhchain::scattering {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |combined output|^2 of the equal-amplitude two-port drive, given the four
// relevant S elements and the input/output relative phases.
double drive_power(const Eigen::Matrix2cd& s, double phi, double theta) {
  const Complex out = 0.5 * (s(0, 0) + std::exp(kI * phi) * s(0, 1) +
                             std::exp(kI * theta) * s(1, 0) +
                             std::exp(kI * (phi + theta)) * s(1, 1));
  return std::norm(out);
}

double golden_refine(const std::function<double(double)>& f, double lo,
                     double hi, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Matrix scattering_matrix(const ChainParams& params) {
  params.validate();
  if (params.n < 2) throw ConfigError("scattering_matrix: needs n >= 2");
  if (params.gamma <= 0.0) throw ConfigError("scattering_matrix: needs gamma > 0");
  if (params.v > 0.0)
    throw ConfigError("scattering_matrix: v > 0 describes on-site gain; "
                      "the steady-state response needs v <= 0");
  ChainParams p = params;
  p.bc = Boundary::Open;
  const int dim = 2 * p.n;
  Matrix a = model::build_real_space(p) +
             kI * p.v * Matrix::Identity(dim, dim) +
             model::dissipation_matrix(p.n, p.gamma);

  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12))
    throw NumericalError("scattering_matrix: H + M_gamma is ill-conditioned "
                         "(rcond = " + std::to_string(rcond) + ")");
  const Matrix g = lu.inverse();

  const int ports[4] = {mode_a(1), mode_b(1), mode_a(p.n), mode_b(p.n)};
  Matrix s = Matrix::Zero(dim, dim);
  for (int pi : ports)
    for (int pj : ports) s(pi, pj) = kI * p.gamma * g(pi, pj);
  return s;
}

TransmissionResult transmission(const ChainParams& params, Direction direction) {
  const Matrix s = scattering_matrix(params);
  const int n = params.n;
  const bool fwd = direction == Direction::Forward;
  const int in_a = fwd ? mode_a(1) : mode_a(n);
  const int in_b = fwd ? mode_b(1) : mode_b(n);
  const int out_a = fwd ? mode_a(n) : mode_a(1);
  const int out_b = fwd ? mode_b(n) : mode_b(1);

  TransmissionResult res;
  res.closed_form = 4.0 * std::norm(fwd ? s(mode_b(n), mode_a(1))
                                        : s(mode_a(1), mode_b(n)));

  Eigen::Matrix2cd sub;
  sub << s(out_a, in_a), s(out_a, in_b), s(out_b, in_a), s(out_b, in_b);

  // dense phase grid, then golden-section refinement per coordinate
  constexpr int kGrid = 256;
  double best = -1.0, best_phi = 0.0, best_theta = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / kGrid;
      const double p = drive_power(sub, phi, theta);
      if (p > best) {
        best = p;
        best_phi = phi;
        best_theta = theta;
      }
    }
  }
  const double half_cell = std::numbers::pi / kGrid;
  for (int round = 0; round < 3; ++round) {
    best_phi = golden_refine(
        [&](double phi) { return drive_power(sub, phi, best_theta); },
        best_phi - 2.0 * half_cell, best_phi + 2.0 * half_cell, 1e-10);
    best_theta = golden_refine(
        [&](double theta) { return drive_power(sub, best_phi, theta); },
        best_theta - 2.0 * half_cell, best_theta + 2.0 * half_cell, 1e-10);
  }
  res.efficiency = drive_power(sub, best_phi, best_theta);
  res.phi_opt = std::remainder(best_phi, 2.0 * std::numbers::pi);
  res.theta_opt = std::remainder(best_theta, 2.0 * std::numbers::pi);
  return res;
}

double analytic_ratio(int n, double delta, double v, double gamma) {
  const double dm = delta - v;
  const double dp = delta + v;
  if (dm == 0.0 && dp == 0.0) return 1.0;
  const double damp = (v - gamma / 2.0) * (v - gamma / 2.0);
  const double interference = std::pow((damp + dm * dm) / (damp + dp * dp), 2.0);
  const double hopping = std::pow(dm / dp, static_cast<double>(2 * n - 4));
  return hopping * interference;
}

RatioResult nonreciprocity_ratio(const ChainParams& params) {
  if (params.n < 2) throw ConfigError("nonreciprocity_ratio: needs n >= 2");
  const Matrix s = scattering_matrix(params);
  const double t_fwd = 4.0 * std::norm(s(mode_b(params.n), mode_a(1)));
  const double t_bwd = 4.0 * std::norm(s(mode_a(1), mode_b(params.n)));
  RatioResult out;
  out.numeric = (t_bwd == 0.0) ? kInf : t_fwd / t_bwd;
  out.analytic = analytic_ratio(params.n, params.delta, params.v, params.gamma);
  return out;
}

TransmissionReport transmission_report(const ChainParams& params) {
  const TransmissionResult fwd = transmission(params, Direction::Forward);
  const TransmissionResult bwd = transmission(params, Direction::Backward);
  TransmissionReport rep;
  rep.t_fwd = fwd.closed_form;
  rep.t_bwd = bwd.closed_form;
  const RatioResult ratio = nonreciprocity_ratio(params);
  rep.ratio_numeric = ratio.numeric;
  rep.ratio_analytic = ratio.analytic;
  rep.insertion_loss_db = (rep.t_fwd > 0.0) ? -10.0 * std::log10(rep.t_fwd) : kInf;
  const double denom = rep.t_fwd + rep.t_bwd;
  rep.contrast_percent = (denom != 0.0) ? 100.0 * (rep.t_fwd - rep.t_bwd) / denom : 0.0;
  rep.phi_opt = fwd.phi_opt;
  rep.theta_opt = fwd.theta_opt;
  return rep;
}

std::vector<SweepRow> sweep_transmission(const ChainParams& params_template,
                                         const std::vector<double>& delta_over_v,
                                         int threads) {
  if (delta_over_v.empty()) throw ConfigError("sweep_transmission: empty grid");
  std::vector<SweepRow> rows(delta_over_v.size());
  parallel_for(delta_over_v.size(), threads, [&](std::size_t i) {
    ChainParams p = params_template;
    p.delta = delta_over_v[i] * p.v;
    const Matrix s = scattering_matrix(p);
    SweepRow& r = rows[i];
    r.delta_over_v = delta_over_v[i];
    r.t_fwd = 4.0 * std::norm(s(mode_b(p.n), mode_a(1)));
    r.t_bwd = 4.0 * std::norm(s(mode_a(1), mode_b(p.n)));
    r.ratio_numeric = (r.t_bwd == 0.0) ? kInf : r.t_fwd / r.t_bwd;
    r.ratio_analytic = analytic_ratio(p.n, p.delta, p.v, p.gamma);
    const double denom = r.t_fwd + r.t_bwd;
    r.contrast_percent = (denom != 0.0) ? 100.0 * (r.t_fwd - r.t_bwd) / denom : 0.0;
  });
  double max_fwd = 0.0, max_bwd = 0.0;
  for (const SweepRow& r : rows) {
    max_fwd = std::max(max_fwd, r.t_fwd);
    max_bwd = std::max(max_bwd, r.t_bwd);
  }
  for (SweepRow& r : rows) {
    r.t_fwd_norm = (max_fwd > 0.0) ? r.t_fwd / max_fwd : 0.0;
    r.t_bwd_norm = (max_bwd > 0.0) ? r.t_bwd / max_bwd : 0.0;
  }
  return rows;
}

}  // namespace nhchain::scattering
