#include "nhchain/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhchain/model.hpp"

namespace nhchain::dynamics {

namespace {

// Dormand-Prince 5(4) with adaptive step, integrating dpsi/dt = -i H psi
// from t0 to t1 in place.
void rk45_advance(const Matrix& h, Vector& psi, double t0, double t1,
                  double tol) {
  auto deriv = [&](const Vector& y) -> Vector { return -kI * (h * y); };

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  double dt = std::min(0.1, t1 - t0);
  const double dt_min = 1e-14 * std::max(1.0, std::abs(t1));
  // sub-epsilon leftover after the final accepted step counts as arrival
  const double t_done = 1e-12 * std::max(1.0, std::abs(t1));
  Vector k1 = deriv(psi);
  while (t1 - t > t_done) {
    dt = std::min(dt, t1 - t);
    const Vector k2 = deriv(psi + dt * (a21 * k1));
    const Vector k3 = deriv(psi + dt * (a31 * k1 + a32 * k2));
    const Vector k4 = deriv(psi + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = deriv(psi + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 =
        deriv(psi + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector y5 = psi + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector k7 = deriv(y5);
    const Vector err_vec =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = err_vec.norm() / std::max(1.0, y5.norm());
    if (err <= tol) {
      t += dt;
      psi = y5;
      k1 = k7; // FSAL
    }
    const double factor = (err > 0.0)
                              ? 0.9 * std::pow(tol / err, 0.2)
                              : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
    if (dt < dt_min)
      throw NumericalError("evolve: Runge-Kutta step size underflow at t = " +
                           std::to_string(t));
  }
}

}  // namespace

Matrix dynamical_matrix(const ChainParams& params, bool include_ports) {
  if (params.v > 0.0)
    throw ConfigError("dynamical_matrix: v > 0 would add on-site gain i*v*I; "
                      "the lossy chain needs v <= 0");
  ChainParams p = params;
  p.bc = Boundary::Open;
  Matrix h = model::build_real_space(p);
  h += kI * params.v * Matrix::Identity(h.rows(), h.cols());
  if (include_ports) h += model::dissipation_matrix(params.n, params.gamma);
  return h;
}

Vector unit_state(int n, int unit, double phase) {
  if (unit < 1 || unit > n) throw ConfigError("unit_state: unit out of range");
  Vector psi = Vector::Zero(2 * n);
  const double s = 1.0 / std::sqrt(2.0);
  psi(mode_a(unit)) = s;
  psi(mode_b(unit)) = std::exp(kI * phase) * s;
  return psi;
}

double transmitting_phase(const ChainParams& params, bool forward) {
  (void)params;
  // Rightward motion hops c_j -> d_j -> c_{j+1} (the delta - v links),
  // leftward motion d_j -> c_j -> d_{j-1} (the delta + v links), so the
  // forward launch lives in the c channel and the backward launch in d.
  // When the respective link vanishes the same state is exactly dark.
  return forward ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0;
}

Vector transmitting_initial(const ChainParams& params, bool forward) {
  const int unit = forward ? 1 : params.n;
  return unit_state(params.n, unit, transmitting_phase(params, forward));
}

Trajectory evolve(const ChainParams& params, const Vector& initial,
                  double t_max, double dt_out, Integrator integrator,
                  bool include_ports) {
  if (t_max <= 0.0) throw ConfigError("evolve: t_max must be > 0");
  if (dt_out <= 0.0) throw ConfigError("evolve: dt_out must be > 0");
  if (std::abs(initial.norm() - 1.0) > 1e-12)
    throw ConfigError("evolve: initial state must be normalized");
  const Matrix h = dynamical_matrix(params, include_ports);
  if (initial.size() != h.rows())
    throw ConfigError("evolve: initial state dimension does not match 2n");

  const int steps = static_cast<int>(std::round(t_max / dt_out));
  Trajectory traj;
  traj.params = params;
  traj.times.reserve(steps + 1);
  traj.amplitudes.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.amplitudes.push_back(initial);

  if (integrator == Integrator::MatrixExp) {
    const Matrix step = (-kI * dt_out * h).exp();
    Vector psi = initial;
    for (int s = 1; s <= steps; ++s) {
      psi = step * psi;
      traj.times.push_back(s * dt_out);
      traj.amplitudes.push_back(psi);
    }
  } else {
    Vector psi = initial;
    for (int s = 1; s <= steps; ++s) {
      rk45_advance(h, psi, (s - 1) * dt_out, s * dt_out, 1e-10);
      traj.times.push_back(s * dt_out);
      traj.amplitudes.push_back(psi);
    }
  }
  return traj;
}

std::vector<UnitOccupation> snapshot(const Trajectory& trajectory, double t) {
  if (trajectory.times.empty()) throw ConfigError("snapshot: empty trajectory");
  if (t < trajectory.times.front() - 1e-12 ||
      t > trajectory.times.back() + 1e-12)
    throw ConfigError("snapshot: time outside the trajectory range");
  int best = 0;
  for (int s = 1; s < trajectory.samples(); ++s)
    if (std::abs(trajectory.times[s] - t) <
        std::abs(trajectory.times[best] - t))
      best = s;
  const int n = trajectory.params.n;
  std::vector<UnitOccupation> out(n);
  for (int j = 1; j <= n; ++j)
    out[j - 1] = {j, trajectory.occupation_a(best, j),
                  trajectory.occupation_b(best, j)};
  return out;
}

}  // namespace nhchain::dynamics
