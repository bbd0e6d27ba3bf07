#pragma once

#include <vector>

#include "nhchain/params.hpp"

namespace nhchain::scattering {

enum class Direction { Forward, Backward };

/// Resonant scattering matrix S_pq = i sqrt(gamma_p gamma_q) G_pq with
/// G = (H + i v I + M_gamma)^{-1}; only the four port rows/columns are
/// nonzero. The uniform on-site loss i v I is part of the steady-state
/// response (it is what keeps every transmission below 1).
Matrix scattering_matrix(const ChainParams& params);

struct TransmissionResult {
  double efficiency = 0.0;     // phase-optimized two-port drive
  double closed_form = 0.0;    // 4|S_{2n,1}|^2 resp. 4|S_{1,2n}|^2
  double phi_opt = 0.0;        // input relative phase
  double theta_opt = 0.0;      // output relative phase
};

/// Two routes to the same number: the closed form and an explicit equal-
/// amplitude two-port drive maximized over input/output phases on a dense
/// grid refined by golden-section search.
TransmissionResult transmission(const ChainParams& params, Direction direction);

struct RatioResult {
  double numeric = 0.0;  // T_fwd / T_bwd, may be inf
  double analytic = 0.0; // ((d-v)/(d+v))^{2n-4} * [((v-g/2)^2+(d-v)^2)/((v-g/2)^2+(d+v)^2)]^2
};

RatioResult nonreciprocity_ratio(const ChainParams& params);

double analytic_ratio(int n, double delta, double v, double gamma);

struct TransmissionReport {
  double t_fwd = 0.0, t_bwd = 0.0;
  double ratio_numeric = 0.0, ratio_analytic = 0.0;
  double insertion_loss_db = 0.0; // -10 log10(T_fwd)
  double contrast_percent = 0.0;  // 100 (T_fwd - T_bwd) / (T_fwd + T_bwd)
  double theta_opt = 0.0, phi_opt = 0.0;
};

TransmissionReport transmission_report(const ChainParams& params);

struct SweepRow {
  double delta_over_v = 0.0;
  double t_fwd = 0.0, t_bwd = 0.0;
  double t_fwd_norm = 0.0, t_bwd_norm = 0.0;
  double ratio_numeric = 0.0, ratio_analytic = 0.0;
  double contrast_percent = 0.0;
};

/// T_fwd / T_bwd over a delta/v grid, normalized by the sweep maxima.
std::vector<SweepRow> sweep_transmission(const ChainParams& params_template,
                                         const std::vector<double>& delta_over_v,
                                         int threads = 1);

}  // namespace nhchain::scattering
