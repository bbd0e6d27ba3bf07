#pragma once

#include <vector>

#include "nhchain/params.hpp"

namespace nhchain::optimize {

struct OptimumRecord {
  int n = 0;
  double w_over_v = 0.0;
  double v_over_gamma = 0.0;
  double t_max = 0.0;
  double insertion_loss_db = 0.0;
  double contrast_percent = 0.0;
  int iterations = 0;
  double final_simplex_size = 0.0;
  bool converged = false;
  bool on_boundary = false;
};

/// Forward transmission at the unidirectional point delta/v = -1, v = -1,
/// as a function of (|w/v|, |v/gamma|).
double forward_transmission(int n, double w_over_v, double v_over_gamma);

/// Global maximum of the forward transmission over (0, 4]^2 in log space:
/// 64x64 coarse grid, then Nelder-Mead refinement to the given parameter
/// tolerance. Deterministic. The search box auto-expands once if the
/// optimum lands on its edge.
OptimumRecord optimize_forward(int n, double tolerance = 1e-6);

std::vector<OptimumRecord> sweep_n(int n_min, int n_max, double tolerance = 1e-6,
                                   int threads = 1);

struct PlateauReport {
  bool differences_decreasing = false;
  double last_t_max = 0.0;
  double extrapolated_t_max = 0.0;       // Richardson in 1/n from the last two records
  double extrapolated_w_over_v = 0.0;
  double extrapolated_v_over_gamma = 0.0;
  double extrapolated_loss_db = 0.0;
  bool last_within_tolerance = false;    // |last - extrapolated| <= 0.01
  int approach_direction = 0;            // +1 from above, -1 from below
};

/// Convergence summary of a sweep_n tail (requires n_max >= 16).
PlateauReport plateau_check(const std::vector<OptimumRecord>& records);

}  // namespace nhchain::optimize
