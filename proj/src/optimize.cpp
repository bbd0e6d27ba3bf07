#include "nhchain/optimize.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>

#include "nhchain/model.hpp"
#include "nhchain/parallel.hpp"

namespace nhchain::optimize {

namespace {

struct Pair {
  double t_fwd = 0.0;
  double t_bwd = 0.0;
};

// Both transmissions at delta/v = -1, v = -1, via single-column solves of
// (H + i v I + M_gamma) x = e_port.
Pair transmissions(int n, double w_over_v, double v_over_gamma) {
  const double v = -1.0;
  const double delta = 1.0; // delta/v = -1
  const double gamma = 1.0 / v_over_gamma;
  const ChainParams p = ChainParams::reducible(n, delta, v, w_over_v, gamma);
  const int dim = 2 * n;
  Matrix a = model::build_real_space(p) + kI * v * Matrix::Identity(dim, dim) +
             model::dissipation_matrix(n, gamma);
  Eigen::PartialPivLU<Matrix> lu(a);
  Vector e_in = Vector::Zero(dim);
  e_in(mode_a(1)) = 1.0;
  const Vector fwd = lu.solve(e_in);
  Vector e_back = Vector::Zero(dim);
  e_back(mode_b(n)) = 1.0;
  const Vector bwd = lu.solve(e_back);
  Pair out;
  out.t_fwd = 4.0 * gamma * gamma * std::norm(fwd(mode_b(n)));
  out.t_bwd = 4.0 * gamma * gamma * std::norm(bwd(mode_a(1)));
  return out;
}

struct NmResult {
  std::array<double, 2> x{};
  double value = 0.0;
  int iterations = 0;
  double simplex_size = 0.0;
  bool converged = false;
};

// Nelder-Mead maximization in log-parameter space.
template <typename Fn>
NmResult nelder_mead(Fn&& objective, std::array<double, 2> start, double tol,
                     int max_iter = 400) {
  using Point = std::array<double, 2>;
  auto f = [&](const Point& x) { return -objective(x); }; // minimize -T

  std::array<Point, 3> simplex;
  simplex[0] = start;
  simplex[1] = {start[0] + 0.05, start[1]};
  simplex[2] = {start[0], start[1] + 0.05};
  std::array<double, 3> fv;
  for (int i = 0; i < 3; ++i) fv[i] = f(simplex[i]);

  NmResult res;
  auto order = [&] {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<Point, 3> s2;
    std::array<double, 3> f2;
    for (int i = 0; i < 3; ++i) {
      s2[i] = simplex[idx[i]];
      f2[i] = fv[idx[i]];
    }
    simplex = s2;
    fv = f2;
  };
  auto size = [&] {
    double m = 0.0;
    for (int i = 1; i < 3; ++i)
      m = std::max(m, std::hypot(simplex[i][0] - simplex[0][0],
                                 simplex[i][1] - simplex[0][1]));
    return m;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    order();
    if (size() < tol) {
      res.converged = true;
      break;
    }
    const Point centroid{(simplex[0][0] + simplex[1][0]) / 2.0,
                         (simplex[0][1] + simplex[1][1]) / 2.0};
    auto along = [&](double t) -> Point {
      return {centroid[0] + t * (centroid[0] - simplex[2][0]),
              centroid[1] + t * (centroid[1] - simplex[2][1])};
    };
    const Point reflected = along(1.0);
    const double fr = f(reflected);
    if (fr < fv[0]) {
      const Point expanded = along(2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[2] = expanded;
        fv[2] = fe;
      } else {
        simplex[2] = reflected;
        fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      simplex[2] = reflected;
      fv[2] = fr;
    } else {
      const Point contracted = along(fr < fv[2] ? 0.5 : -0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, fv[2])) {
        simplex[2] = contracted;
        fv[2] = fc;
      } else { // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          simplex[i] = {simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1])};
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  order();
  res.x = simplex[0];
  res.value = -fv[0];
  res.iterations = it;
  res.simplex_size = size();
  return res;
}

OptimumRecord run_box(int n, double tolerance, double box_hi) {
  // coarse log-spaced grid over (0, box_hi]^2
  constexpr int kGrid = 64;
  const double log_lo = std::log(1e-2);
  const double log_hi = std::log(box_hi);
  double best = -1.0;
  std::array<double, 2> best_x{};
  for (int i = 0; i < kGrid; ++i) {
    const double lw = log_lo + (log_hi - log_lo) * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double lg = log_lo + (log_hi - log_lo) * j / (kGrid - 1);
      const double t = transmissions(n, std::exp(lw), std::exp(lg)).t_fwd;
      if (t > best) {
        best = t;
        best_x = {lw, lg};
      }
    }
  }

  auto objective = [&](const std::array<double, 2>& lx) {
    return transmissions(n, std::exp(lx[0]), std::exp(lx[1])).t_fwd;
  };
  // tolerance in parameters maps to ~tolerance in log space near O(1) values
  const NmResult nm = nelder_mead(objective, best_x, tolerance);

  OptimumRecord rec;
  rec.n = n;
  rec.w_over_v = std::exp(nm.x[0]);
  rec.v_over_gamma = std::exp(nm.x[1]);
  rec.t_max = nm.value;
  rec.iterations = nm.iterations;
  rec.final_simplex_size = nm.simplex_size;
  rec.converged = nm.converged;
  if (!nm.converged) { // fall back to the best grid point
    rec.w_over_v = std::exp(best_x[0]);
    rec.v_over_gamma = std::exp(best_x[1]);
    rec.t_max = best;
  }
  rec.insertion_loss_db = -10.0 * std::log10(rec.t_max);
  const Pair at_opt = transmissions(n, rec.w_over_v, rec.v_over_gamma);
  const double denom = at_opt.t_fwd + at_opt.t_bwd;
  rec.contrast_percent =
      (denom != 0.0) ? 100.0 * (at_opt.t_fwd - at_opt.t_bwd) / denom : 0.0;
  rec.on_boundary =
      rec.w_over_v > 0.95 * box_hi || rec.v_over_gamma > 0.95 * box_hi;
  return rec;
}

}  // namespace

double forward_transmission(int n, double w_over_v, double v_over_gamma) {
  if (n < 2) throw ConfigError("forward_transmission: needs n >= 2");
  if (w_over_v <= 0.0 || v_over_gamma <= 0.0)
    throw ConfigError("forward_transmission: ratios must be > 0");
  return transmissions(n, w_over_v, v_over_gamma).t_fwd;
}

OptimumRecord optimize_forward(int n, double tolerance) {
  if (n < 2) throw ConfigError("optimize_forward: needs n >= 2");
  OptimumRecord rec = run_box(n, tolerance, 4.0);
  if (rec.on_boundary) {
    rec = run_box(n, tolerance, 16.0);
    if (rec.on_boundary)
      throw NumericalError("optimize_forward: optimum persists on the expanded "
                           "search-box boundary at n = " + std::to_string(n));
  }
  return rec;
}

std::vector<OptimumRecord> sweep_n(int n_min, int n_max, double tolerance,
                                   int threads) {
  if (n_min < 2 || n_min > n_max || n_max > 64)
    throw ConfigError("sweep_n: need 2 <= n_min <= n_max <= 64");
  std::vector<OptimumRecord> records(n_max - n_min + 1);
  parallel_for(records.size(), threads, [&](std::size_t i) {
    records[i] = optimize_forward(n_min + static_cast<int>(i), tolerance);
  });
  return records;
}

PlateauReport plateau_check(const std::vector<OptimumRecord>& records) {
  if (records.size() < 2 || records.back().n < 16)
    throw ConfigError("plateau_check: needs a sweep reaching n >= 16");
  PlateauReport rep;
  const OptimumRecord& last = records.back();
  const OptimumRecord& prev = records[records.size() - 2];
  rep.last_t_max = last.t_max;

  // Richardson extrapolation assuming y(n) = y_inf + c/n
  auto extrapolate = [&](double y1, double y2) {
    const double n1 = prev.n, n2 = last.n;
    return y2 + (y2 - y1) * (1.0 / n2) / (1.0 / n1 - 1.0 / n2);
  };
  rep.extrapolated_t_max = extrapolate(prev.t_max, last.t_max);
  rep.extrapolated_w_over_v = extrapolate(prev.w_over_v, last.w_over_v);
  rep.extrapolated_v_over_gamma = extrapolate(prev.v_over_gamma, last.v_over_gamma);
  rep.extrapolated_loss_db = -10.0 * std::log10(rep.extrapolated_t_max);

  rep.differences_decreasing = true;
  const std::size_t tail = std::min<std::size_t>(records.size(), 6);
  for (std::size_t i = records.size() - tail + 2; i < records.size(); ++i) {
    const double d_prev = std::abs(records[i - 1].t_max - records[i - 2].t_max);
    const double d_cur = std::abs(records[i].t_max - records[i - 1].t_max);
    if (d_cur > d_prev) rep.differences_decreasing = false;
  }
  rep.last_within_tolerance =
      std::abs(rep.last_t_max - rep.extrapolated_t_max) <= 0.01;
  rep.approach_direction = (rep.last_t_max >= rep.extrapolated_t_max) ? 1 : -1;
  return rep;
}

}  // namespace nhchain::optimize
