#pragma once

#include <string>
#include <vector>

#include "nhchain/params.hpp"

namespace nhchain::dynamics {

enum class Integrator { MatrixExp, RungeKutta };

/// Time evolution record: amplitudes on the output grid plus the run context.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> amplitudes; // one 2n-vector per sample
  ChainParams params;
  std::string initial_descriptor;

  int samples() const { return static_cast<int>(times.size()); }
  /// |a_j(t)|^2 resp. |b_j(t)|^2 at sample index s.
  double occupation_a(int s, int unit) const { return std::norm(amplitudes[s](mode_a(unit))); }
  double occupation_b(int s, int unit) const { return std::norm(amplitudes[s](mode_b(unit))); }
  double total_occupation(int s) const { return amplitudes[s].squaredNorm(); }
};

/// H + i v I: the chain Hamiltonian with the uniform on-site loss restored.
/// Rejects v > 0 (that sign would describe gain, not the lossy chain).
Matrix dynamical_matrix(const ChainParams& params, bool include_ports = false);

/// (e_a + e^{i phase} e_b)/sqrt(2) on the given unit.
Vector unit_state(int n, int unit, double phase);

/// Phase that puts the launch state into the channel which propagates in the
/// requested direction: +pi/2 (the c channel, which rides the delta - v links)
/// for forward, -pi/2 (the d channel) for backward.
double transmitting_phase(const ChainParams& params, bool forward);

/// Channel-pure launch state on unit 1 (forward) or unit n (backward).
Vector transmitting_initial(const ChainParams& params, bool forward);

/// psi(t) = exp(-i H_dyn t) psi(0) on a uniform output grid with spacing
/// dt_out (default 0.1). Both integrator paths agree within 1e-8.
Trajectory evolve(const ChainParams& params, const Vector& initial,
                  double t_max, double dt_out = 0.1,
                  Integrator integrator = Integrator::MatrixExp,
                  bool include_ports = false);

struct UnitOccupation {
  int unit = 1;
  double occ_a = 0.0;
  double occ_b = 0.0;
};

/// Per-unit occupations at the grid sample nearest t.
std::vector<UnitOccupation> snapshot(const Trajectory& trajectory, double t);

}  // namespace nhchain::dynamics
