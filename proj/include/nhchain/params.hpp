#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "nhchain/errors.hpp"

namespace nhchain {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Boundary { Open, Periodic };

/// All rates of a chain run, dimensionless in units of the auxiliary-mode
/// decay rate. Single source of truth for every builder and sweep.
struct ChainParams {
  int n = 1;          // unit cells
  double delta = 0.0; // detuning, +delta on a modes, -delta on b modes
  double v = 0.0;     // dissipative intracell coupling (the iv term)
  Complex w1{};       // b_j -> a_{j+1}
  Complex w2{};       // a_j -> b_{j+1}
  Complex u1{};       // a_j -> a_{j+1}
  Complex u2{};       // b_j -> b_{j+1}
  double gamma = 0.0; // port damping rate
  Boundary bc = Boundary::Open;

  /// Reducible convention: w1 = w2 = w real, u1 = -u2 = i w.
  static ChainParams reducible(int n, double delta, double v, double w,
                               double gamma = 0.0,
                               Boundary bc = Boundary::Open) {
    ChainParams p;
    p.n = n;
    p.delta = delta;
    p.v = v;
    p.w1 = p.w2 = Complex{w, 0.0};
    p.u1 = Complex{0.0, w};
    p.u2 = Complex{0.0, -w};
    p.gamma = gamma;
    p.bc = bc;
    return p;
  }

  bool is_ssh_reducible(double tol = 1e-12) const {
    const double w = w1.real();
    return std::abs(w1.imag()) <= tol && std::abs(w2 - Complex{w, 0.0}) <= tol &&
           std::abs(u1 - Complex{0.0, w}) <= tol &&
           std::abs(u2 + Complex{0.0, w}) <= tol;
  }

  /// Real w of the reducible convention. Only meaningful if is_ssh_reducible().
  double reducible_w() const { return w1.real(); }

  void validate() const {
    if (n < 1) throw ConfigError("ChainParams: n must be >= 1");
    if (gamma < 0.0) throw ConfigError("ChainParams: gamma must be >= 0");
  }
};

enum class Sublattice { A, B };

/// Position of a mode in the chain. Flat ordering is (a_1, b_1, a_2, b_2, ...)
/// so that flat index 1 is a_1 and 2n is b_n (1-based).
struct ModeIndex {
  int unit = 1; // 1-based
  Sublattice sublattice = Sublattice::A;

  int flat0() const { return 2 * (unit - 1) + (sublattice == Sublattice::B ? 1 : 0); }
};

// 0-based flat indices used throughout the matrix code.
inline int mode_a(int unit) { return 2 * (unit - 1); }
inline int mode_b(int unit) { return 2 * (unit - 1) + 1; }

}  // namespace nhchain
