// Test-only reference computations, kept independent of the library's own
// solution paths.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nhchain/params.hpp"

namespace oracles {

using nhchain::ChainParams;
using nhchain::Complex;
using nhchain::Matrix;
using nhchain::Vector;

/// Deterministic pseudo-random stream (splitmix64); fixed seeds only, so
/// test inputs are a reproducible enumeration.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  double uniform(double lo, double hi) {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }
  int uniform_int(int lo, int hi) { // inclusive
    return lo + static_cast<int>(uniform(0.0, hi - lo + 1.0 - 1e-12));
  }

 private:
  std::uint64_t state_;
};

inline ChainParams random_reducible(Rng& rng, int n_min = 2, int n_max = 12,
                                    bool even_n = false) {
  int n = rng.uniform_int(n_min, n_max);
  if (even_n && n % 2 != 0) n = (n + 1 <= n_max) ? n + 1 : n - 1;
  return ChainParams::reducible(n, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 0.0),
                                rng.uniform(-2.0, 2.0));
}

/// Eigenvalues of a general complex 2x2 matrix, closed form.
inline std::pair<Complex, Complex> eig2(const Eigen::Matrix2cd& m) {
  const Complex half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex root = std::sqrt(half_tr * half_tr - det);
  return {half_tr + root, half_tr - root};
}

/// Bloch block by direct Fourier transform of the hopping coefficients,
/// written out term by term (independent of the library's d-vector path).
inline Eigen::Matrix2cd fourier_block(const ChainParams& p, double k) {
  const Complex eik = std::exp(Complex{0.0, k});
  const Complex emk = std::exp(Complex{0.0, -k});
  Eigen::Matrix2cd h;
  h(0, 0) = p.delta + p.u1 * eik + std::conj(p.u1) * emk;
  h(1, 1) = -p.delta + p.u2 * eik + std::conj(p.u2) * emk;
  h(0, 1) = Complex{0.0, p.v} + p.w2 * eik + std::conj(p.w1) * emk;
  h(1, 0) = Complex{0.0, p.v} + p.w1 * eik + std::conj(p.w2) * emk;
  return h;
}

/// Union of Bloch eigenvalues over the discrete momenta of an n-cell ring.
inline std::vector<Complex> ring_spectrum(const ChainParams& p) {
  std::vector<Complex> out;
  for (int m = 0; m < p.n; ++m) {
    const double k = 2.0 * std::numbers::pi * m / p.n;
    const auto [e1, e2] = eig2(fourier_block(p, k));
    out.push_back(e1);
    out.push_back(e2);
  }
  return out;
}

/// Winding of det[H'(k) - E_b] for the SSH-equivalent Bloch block
/// [[0, delta+v-2iw e^{-ik}], [delta-v+2iw e^{ik}, 0]].
inline double ssh_winding_phase(const ChainParams& p, Complex base_point,
                                int k_samples) {
  const double w = p.reducible_w();
  std::vector<Complex> dets(k_samples);
  for (int i = 0; i < k_samples; ++i) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / k_samples;
    const Complex upper = p.delta + p.v - 2.0 * nhchain::kI * w * std::exp(-nhchain::kI * k);
    const Complex lower = p.delta - p.v + 2.0 * nhchain::kI * w * std::exp(nhchain::kI * k);
    dets[i] = base_point * base_point - upper * lower;
  }
  double acc = 0.0;
  for (int i = 0; i < k_samples; ++i)
    acc += std::arg(dets[(i + 1) % k_samples] / dets[i]);
  return acc / (2.0 * std::numbers::pi);
}

}  // namespace oracles
