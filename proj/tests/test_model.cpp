#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhchain/model.hpp"
#include "oracles.hpp"

using namespace nhchain;
using doctest::Approx;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("real-space single cell matches the dissipative-coupling block") {
  ChainParams p;
  p.n = 1;
  p.delta = 1.0;
  p.v = -1.0;
  const Matrix h = model::build_real_space(p);
  CHECK(h(0, 0) == Complex{1.0, 0.0});
  CHECK(h(1, 1) == Complex{-1.0, 0.0});
  CHECK(h(0, 1) == Complex{0.0, -1.0});
  CHECK(h(1, 0) == Complex{0.0, -1.0});

  // characteristic polynomial: lambda^2 = delta^2 - v^2 = 0, double root
  const Complex tr = h(0, 0) + h(1, 1);
  const Complex det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  CHECK(std::abs(tr) < 1e-15);
  CHECK(std::abs(det) < 1e-15);
}

TEST_CASE("the iv term is the only non-Hermitian piece") {
  ChainParams p = ChainParams::reducible(2, 0.4, -0.7, 1.1);
  Matrix h = model::build_real_space(p);
  CHECK(max_abs(h - h.adjoint()) > 0.1);
  p.v = 0.0;
  h = model::build_real_space(p);
  CHECK(max_abs(h - h.adjoint()) <= 1e-14);
}

TEST_CASE("hermiticity boundary over random parameter sets") {
  oracles::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    ChainParams p = oracles::random_reducible(rng);
    p.bc = (i % 2 == 0) ? Boundary::Open : Boundary::Periodic;
    const Matrix h = model::build_real_space(p);
    if (p.v == 0.0 || std::abs(p.v) < 1e-12)
      CHECK(max_abs(h - h.adjoint()) <= 1e-14);
    else
      CHECK(max_abs(h - h.adjoint()) > 1e-6);
  }
}

TEST_CASE("pbc adds the wrap-around blocks") {
  ChainParams p = ChainParams::reducible(3, 0.0, 0.0, 1.0);
  const Matrix obc = model::build_real_space(p);
  p.bc = Boundary::Periodic;
  const Matrix pbc = model::build_real_space(p);
  CHECK(obc(mode_b(3), mode_a(1)) == Complex{0.0, 0.0});
  CHECK(pbc(mode_b(3), mode_a(1)) == Complex{1.0, 0.0}); // w1 wrap
  CHECK(pbc(mode_a(3), mode_a(1)) == Complex{0.0, 1.0}); // u1 wrap
}

TEST_CASE("bloch d-vector in the reducible gauge") {
  ChainParams p = ChainParams::reducible(4, 0.5, -1.0, 1.0);
  const auto b = model::build_bloch(p, 0.0);
  CHECK(std::abs(b.d0) < 1e-15);
  CHECK(std::abs(b.dy) < 1e-15);
  CHECK(b.dx == Complex{2.0, -1.0}); // iv + 2w cos k at k = 0
  CHECK(b.dz == Complex{0.5, 0.0});
}

TEST_CASE("bloch block with all couplings off is the bare cell") {
  ChainParams p;
  p.n = 2;
  p.delta = 0.3;
  p.v = -0.4;
  for (double k : {-3.0, 0.0, 1.7}) {
    const auto b = model::build_bloch(p, k);
    CHECK(std::abs(b.d0) < 1e-15);
    CHECK(std::abs(b.dy) < 1e-15);
    CHECK(b.dx == Complex{0.0, -0.4});
    CHECK(b.dz == Complex{0.3, 0.0});
  }
}

TEST_CASE("bloch block reconstructs from its d-vector and matches the direct Fourier transform") {
  oracles::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    ChainParams p;
    p.n = 5;
    p.delta = rng.uniform(-1.0, 1.0);
    p.v = rng.uniform(-1.0, 0.0);
    p.w1 = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    p.w2 = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    p.u1 = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    p.u2 = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double k = rng.uniform(-3.14, 3.14);
    const auto b = model::build_bloch(p, k);
    Eigen::Matrix2cd rebuilt;
    rebuilt << b.d0 + b.dz, b.dx - kI * b.dy, b.dx + kI * b.dy, b.d0 - b.dz;
    CHECK(max_abs(b.h - rebuilt) < 1e-14);
    CHECK(max_abs(b.h - oracles::fourier_block(p, k)) < 1e-13);
  }
}

TEST_CASE("ssh-equivalent single cell") {
  ChainParams p = ChainParams::reducible(1, 1.0, -1.0, 0.0);
  const Matrix h = model::build_ssh_equivalent(p);
  CHECK(h(0, 0) == Complex{0.0, 0.0});
  CHECK(h(0, 1) == Complex{0.0, 0.0}); // delta + v = 0
  CHECK(h(1, 0) == Complex{2.0, 0.0}); // delta - v = 2
  CHECK(h(1, 1) == Complex{0.0, 0.0});
}

TEST_CASE("unidirectional coupling at delta/v = -1") {
  // delta/v = -1 with v < 0 kills the delta + v hop, the forward block
  const ChainParams p = ChainParams::reducible(3, 1.0, -1.0, 0.5);
  const Matrix h = model::build_ssh_equivalent(p);
  for (int j = 1; j <= 3; ++j) {
    CHECK(std::abs(h(mode_a(j), mode_b(j))) < 1e-15);
    CHECK(h(mode_b(j), mode_a(j)) == Complex{2.0, 0.0});
  }
}

TEST_CASE("ssh builder rejects non-reducible couplings") {
  ChainParams p = ChainParams::reducible(2, 0.0, -1.0, 1.0);
  p.u2 = Complex{0.0, 1.0}; // breaks u1 = -u2
  CHECK_THROWS_AS(model::build_ssh_equivalent(p), ConfigError);
}

TEST_CASE("unitary transform block and unitarity") {
  const Matrix u1 = model::unitary_transform(1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u1(0, 0) - Complex{s, 0.0}) < 1e-15);
  CHECK(std::abs(u1(0, 1) - Complex{s, 0.0}) < 1e-15);
  CHECK(std::abs(u1(1, 0) - Complex{0.0, s}) < 1e-15);
  CHECK(std::abs(u1(1, 1) - Complex{0.0, -s}) < 1e-15);

  const Matrix u7 = model::unitary_transform(7);
  CHECK(max_abs(u7.adjoint() * u7 - Matrix::Identity(14, 14)) <= 1e-14);

  // c_1 = (a_1 - i b_1)/sqrt(2): the c component of e_{a_1}
  Vector e_a = Vector::Zero(2);
  e_a(0) = 1.0;
  const Vector in_cd = u1.adjoint() * e_a;
  CHECK(std::abs(in_cd(0) - Complex{s, 0.0}) < 1e-15);
  Vector e_b = Vector::Zero(2);
  e_b(1) = 1.0;
  CHECK(std::abs((u1.adjoint() * e_b)(0) - Complex{0.0, -s}) < 1e-15);
}

TEST_CASE("unitary equivalence of the two real-space models") {
  oracles::Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const ChainParams p = oracles::random_reducible(rng, 1, 10);
    const Matrix u = model::unitary_transform(p.n);
    const Matrix lhs = u.adjoint() * model::build_real_space(p) * u;
    CHECK(max_abs(lhs - model::build_ssh_equivalent(p)) <= 1e-12);
  }
}

TEST_CASE("anti-PT symmetry of the dissipative chain") {
  oracles::Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    ChainParams p = oracles::random_reducible(rng, 2, 12, /*even_n=*/true);
    p.bc = (trial % 2 == 0) ? Boundary::Open : Boundary::Periodic;
    const auto res = model::check_anti_pt(model::build_real_space(p), p.n);
    CHECK(res.symmetric);
    CHECK(res.residual <= 1e-12);
  }
  // odd n under OBC is fine too; only the periodic seam needs even n
  const ChainParams p = ChainParams::reducible(7, 0.3, -0.9, 1.4);
  CHECK(model::check_anti_pt(model::build_real_space(p), 7).symmetric);
}

TEST_CASE("periodic seam breaks the symmetry at odd n") {
  const ChainParams p =
      ChainParams::reducible(5, 0.3, -0.9, 1.4, 0.0, Boundary::Periodic);
  CHECK_FALSE(model::check_anti_pt(model::build_real_space(p), 5).symmetric);
}

TEST_CASE("hermitian SSH chain is not anti-PT symmetric") {
  // real unequal hoppings plus on-site detuning
  const int n = 4;
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  for (int j = 1; j <= n; ++j) {
    h(mode_a(j), mode_a(j)) = 0.5;
    h(mode_b(j), mode_b(j)) = -0.5;
    h(mode_a(j), mode_b(j)) = 1.0;
    h(mode_b(j), mode_a(j)) = 1.0;
  }
  for (int j = 1; j < n; ++j) {
    h(mode_b(j), mode_a(j + 1)) = 1.7;
    h(mode_a(j + 1), mode_b(j)) = 1.7;
  }
  CHECK_FALSE(model::check_anti_pt(h, n).symmetric);
}

TEST_CASE("anti-PT edge cases") {
  CHECK(model::check_anti_pt(Matrix::Zero(6, 6), 3).symmetric);
  CHECK_THROWS_AS(model::check_anti_pt(Matrix::Zero(6, 6), 4), ConfigError);
}

TEST_CASE("dissipation matrix ports") {
  const Matrix m2 = model::dissipation_matrix(2, 0.2);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(m2(i, i) - Complex{0.0, -0.1}) < 1e-15);

  const Matrix m3 = model::dissipation_matrix(3, 1.0);
  const Complex port{0.0, -0.5};
  CHECK(m3(0, 0) == port);
  CHECK(m3(1, 1) == port);
  CHECK(m3(2, 2) == Complex{0.0, 0.0});
  CHECK(m3(3, 3) == Complex{0.0, 0.0});
  CHECK(m3(4, 4) == port);
  CHECK(m3(5, 5) == port);
  CHECK(max_abs(m3 - m3.diagonal().asDiagonal().toDenseMatrix()) < 1e-15);

  CHECK(max_abs(model::dissipation_matrix(4, 0.0)) == 0.0);
  CHECK_THROWS_AS(model::dissipation_matrix(1, 1.0), ConfigError);
}

TEST_CASE("parameter validation") {
  ChainParams p;
  p.n = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.n = 1;
  p.gamma = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK(ChainParams::reducible(3, 0.0, 0.0, 1.0).is_ssh_reducible());
  ChainParams q = ChainParams::reducible(3, 0.0, 0.0, 1.0);
  q.w2 += Complex{1e-6, 0.0};
  CHECK_FALSE(q.is_ssh_reducible());
}
