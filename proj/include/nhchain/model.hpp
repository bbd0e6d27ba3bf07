#pragma once

#include "nhchain/params.hpp"

namespace nhchain::model {

/// 2x2 Bloch block at momentum k, kept together with its d-vector
/// decomposition h = d0*I + dx*sx + dy*sy + dz*sz.
struct BlochMatrix {
  double k = 0.0;
  Complex d0{}, dx{}, dy{}, dz{};
  Eigen::Matrix2cd h;

  /// Closed-form eigenvalues d0 +/- sqrt(dx^2 + dy^2 + dz^2).
  std::pair<Complex, Complex> eigenvalues() const;
};

/// 2n x 2n chain Hamiltonian in the (a_1, b_1, ..., a_n, b_n) basis.
/// The iv intracell term enters both off-diagonal slots without a conjugate;
/// the w and u intercell terms carry their Hermitian partners.
Matrix build_real_space(const ChainParams& params);

/// Bloch block of the periodic chain at momentum k in [-pi, pi].
BlochMatrix build_bloch(const ChainParams& params, double k);

/// Non-Hermitian SSH form in the (c_1, d_1, ..., c_n, d_n) basis:
/// intracell hoppings delta+v and delta-v, intercell +/-2iw.
/// Requires is_ssh_reducible(); honors params.bc.
Matrix build_ssh_equivalent(const ChainParams& params);

/// Block-diagonal basis change with [1,1; i,-i]/sqrt(2) in every cell,
/// mapping c_j = (a_j - i b_j)/sqrt(2), d_j = (a_j + i b_j)/sqrt(2).
Matrix unitary_transform(int n);

struct AntiPtResult {
  bool symmetric = false;
  double residual = 0.0;
};

/// Checks (PT) H (PT)^-1 = -H with T = entrywise conjugation and P = sigma_x
/// in each cell with an alternating sign between cells. The plain cell-wise
/// sigma_x does not anticommute with the intercell w,u phases; the staggered
/// sign is the operator that does.
AntiPtResult check_anti_pt(const Matrix& h, int n, double tol = 1e-12);

/// Diag[-i gamma/2, -i gamma/2, 0, ..., 0, -i gamma/2, -i gamma/2]:
/// ports on both modes of the leftmost and rightmost units. Requires n >= 2.
Matrix dissipation_matrix(int n, double gamma);

}  // namespace nhchain::model
