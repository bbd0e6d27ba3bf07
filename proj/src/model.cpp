#include "nhchain/model.hpp"

#include <cmath>

namespace nhchain::model {

std::pair<Complex, Complex> BlochMatrix::eigenvalues() const {
  const Complex root = std::sqrt(dx * dx + dy * dy + dz * dz);
  return {d0 + root, d0 - root};
}

Matrix build_real_space(const ChainParams& params) {
  params.validate();
  const int n = params.n;
  Matrix h = Matrix::Zero(2 * n, 2 * n);

  for (int j = 1; j <= n; ++j) {
    h(mode_a(j), mode_a(j)) = params.delta;
    h(mode_b(j), mode_b(j)) = -params.delta;
    // dissipative coupling: no Hermitian partner
    h(mode_a(j), mode_b(j)) += kI * params.v;
    h(mode_b(j), mode_a(j)) += kI * params.v;
  }

  const int bonds = (params.bc == Boundary::Periodic) ? n : n - 1;
  for (int j = 1; j <= bonds; ++j) {
    const int jp = (j % n) + 1;
    h(mode_b(j), mode_a(jp)) += params.w1;
    h(mode_a(jp), mode_b(j)) += std::conj(params.w1);
    h(mode_a(j), mode_b(jp)) += params.w2;
    h(mode_b(jp), mode_a(j)) += std::conj(params.w2);
    h(mode_a(j), mode_a(jp)) += params.u1;
    h(mode_a(jp), mode_a(j)) += std::conj(params.u1);
    h(mode_b(j), mode_b(jp)) += params.u2;
    h(mode_b(jp), mode_b(j)) += std::conj(params.u2);
  }
  return h;
}

BlochMatrix build_bloch(const ChainParams& params, double k) {
  params.validate();
  const double ck = std::cos(k);
  const double sk = std::sin(k);
  const Complex us = params.u1 + params.u2;
  const Complex ud = params.u1 - params.u2;
  const Complex ws = params.w1 + params.w2;
  const Complex wd = params.w1 - params.w2;

  BlochMatrix b;
  b.k = k;
  b.d0 = us.real() * ck - us.imag() * sk;
  b.dz = params.delta + ud.real() * ck - ud.imag() * sk;
  b.dx = kI * params.v + ws.real() * ck - ws.imag() * sk;
  // d_y of the Fourier transform with a_j = (1/sqrt n) sum_k a_k e^{ikj};
  // vanishes for w1 = w2.
  b.dy = wd.imag() * ck + wd.real() * sk;

  b.h << b.d0 + b.dz, b.dx - kI * b.dy, b.dx + kI * b.dy, b.d0 - b.dz;
  return b;
}

Matrix build_ssh_equivalent(const ChainParams& params) {
  params.validate();
  if (!params.is_ssh_reducible())
    throw ConfigError("build_ssh_equivalent: parameters are not SSH-reducible "
                      "(need w1 = w2 real and u1 = -u2 = i w1)");
  const int n = params.n;
  const double w = params.reducible_w();
  Matrix h = Matrix::Zero(2 * n, 2 * n);

  for (int j = 1; j <= n; ++j) {
    h(mode_a(j), mode_b(j)) = params.delta + params.v; // c_j† d_j
    h(mode_b(j), mode_a(j)) = params.delta - params.v; // d_j† c_j
  }
  const int bonds = (params.bc == Boundary::Periodic) ? n : n - 1;
  for (int j = 1; j <= bonds; ++j) {
    const int jp = (j % n) + 1;
    h(mode_b(j), mode_a(jp)) += 2.0 * kI * w;  // d_j† c_{j+1}
    h(mode_a(jp), mode_b(j)) += -2.0 * kI * w; // c_{j+1}† d_j
  }
  return h;
}

Matrix unitary_transform(int n) {
  if (n < 1) throw ConfigError("unitary_transform: n must be >= 1");
  const double s = 1.0 / std::sqrt(2.0);
  Matrix u = Matrix::Zero(2 * n, 2 * n);
  for (int j = 1; j <= n; ++j) {
    u(mode_a(j), mode_a(j)) = s;
    u(mode_a(j), mode_b(j)) = s;
    u(mode_b(j), mode_a(j)) = kI * s;
    u(mode_b(j), mode_b(j)) = -kI * s;
  }
  return u;
}

AntiPtResult check_anti_pt(const Matrix& h, int n, double tol) {
  if (h.rows() != 2 * n || h.cols() != 2 * n)
    throw ConfigError("check_anti_pt: matrix dimension does not match 2n");
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  for (int j = 1; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    p(mode_a(j), mode_b(j)) = sign;
    p(mode_b(j), mode_a(j)) = sign;
  }
  const Matrix r = p * h.conjugate() * p + h;
  AntiPtResult out;
  out.residual = r.cwiseAbs().maxCoeff();
  out.symmetric = out.residual <= tol;
  return out;
}

Matrix dissipation_matrix(int n, double gamma) {
  if (n < 2) throw ConfigError("dissipation_matrix: needs n >= 2 (ports on distinct units)");
  if (gamma < 0.0) throw ConfigError("dissipation_matrix: gamma must be >= 0");
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  const Complex d = -kI * gamma / 2.0;
  m(mode_a(1), mode_a(1)) = d;
  m(mode_b(1), mode_b(1)) = d;
  m(mode_a(n), mode_a(n)) = d;
  m(mode_b(n), mode_b(n)) = d;
  return m;
}

}  // namespace nhchain::model
