#include "nhchain/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nhchain/parallel.hpp"

namespace nhchain::spectral {

namespace {

// Operator 2-norm estimate by power iteration on H^H H, deterministic start.
double spectral_norm(const Matrix& h) {
  const int dim = static_cast<int>(h.rows());
  if (dim == 0) return 0.0;
  Vector x = Vector::Ones(dim);
  for (int i = 0; i < dim; ++i) x(i) += Complex(0.0, 1.0 / (i + 1.0));
  x.normalize();
  double norm = 0.0;
  for (int it = 0; it < 50; ++it) {
    Vector y = h.adjoint() * (h * x);
    const double len = y.norm();
    if (len == 0.0) return 0.0;
    x = y / len;
    norm = std::sqrt(len);
  }
  return norm;
}

Complex det_shifted(const model::BlochMatrix& b, Complex e) {
  return (b.h(0, 0) - e) * (b.h(1, 1) - e) - b.h(0, 1) * b.h(1, 0);
}

bool point_in_polygon(Complex p, const std::vector<Complex>& poly) {
  // even-odd crossing rule
  bool inside = false;
  const std::size_t m = poly.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const double xi = poly[i].real(), yi = poly[i].imag();
    const double xj = poly[j].real(), yj = poly[j].imag();
    if ((yi > p.imag()) != (yj > p.imag())) {
      const double xcross = (xj - xi) * (p.imag() - yi) / (yj - yi) + xi;
      if (p.real() < xcross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

SpectrumResult diagonalize(const Matrix& h) {
  if (h.rows() != h.cols()) throw ConfigError("diagonalize: matrix must be square");
  const int dim = static_cast<int>(h.rows());
  if (dim > 2048) throw ConfigError("diagonalize: dimension cap is 2048");
  if (dim % 2 != 0) throw ConfigError("diagonalize: expected an even dimension (2 modes per unit)");

  Eigen::ComplexEigenSolver<Matrix> solver(h, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("diagonalize: QR iteration did not converge at dimension " +
                         std::to_string(dim));

  SpectrumResult out;
  out.eigenvalues = solver.eigenvalues();
  out.right_eigenvectors = solver.eigenvectors();

  const double scale = spectral_norm(h);
  out.residuals.resize(dim);
  for (int m = 0; m < dim; ++m) {
    const Vector psi = out.right_eigenvectors.col(m);
    out.residuals(m) = (h * psi - out.eigenvalues(m) * psi).norm() / psi.norm();
  }
  const double gate = 1e-8 * std::max(scale, 1e-300);
  if (out.residuals.maxCoeff() > gate)
    throw NumericalError("diagonalize: residual gate failed: max residual " +
                         std::to_string(out.residuals.maxCoeff()) + " > " +
                         std::to_string(gate));

  const int n = dim / 2;
  out.profiles.resize(dim, n);
  for (int m = 0; m < dim; ++m) {
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p = std::norm(out.right_eigenvectors(mode_a(j), m)) +
                       std::norm(out.right_eigenvectors(mode_b(j), m));
      out.profiles(m, j - 1) = p;
      total += p;
    }
    out.profiles.row(m) /= total;
  }
  return out;
}

std::vector<LocusPoint> pbc_locus(const ChainParams& params, int k_samples) {
  if (k_samples < 16) throw ConfigError("pbc_locus: k_samples must be >= 16");
  std::vector<LocusPoint> locus(k_samples);
  for (int i = 0; i < k_samples; ++i) {
    const double k = -std::numbers::pi +
                     2.0 * std::numbers::pi * i / (k_samples - 1);
    const auto [e1, e2] = model::build_bloch(params, k).eigenvalues();
    locus[i].k = k;
    if (i == 0) {
      locus[i].band[0] = e1;
      locus[i].band[1] = e2;
    } else {
      // continuity: keep each band on its nearest predecessor
      const Complex p0 = locus[i - 1].band[0];
      const Complex p1 = locus[i - 1].band[1];
      const double keep = std::abs(e1 - p0) + std::abs(e2 - p1);
      const double swap = std::abs(e2 - p0) + std::abs(e1 - p1);
      if (swap < keep) {
        locus[i].band[0] = e2;
        locus[i].band[1] = e1;
      } else {
        locus[i].band[0] = e1;
        locus[i].band[1] = e2;
      }
    }
  }
  return locus;
}

WindingResult winding_number(const ChainParams& params, Complex base_point,
                             int k_samples) {
  if (k_samples < 64) throw ConfigError("winding_number: k_samples must be >= 64");
  std::vector<Complex> dets(k_samples);
  double max_abs = 0.0;
  for (int i = 0; i < k_samples; ++i) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / k_samples;
    dets[i] = det_shifted(model::build_bloch(params, k), base_point);
    max_abs = std::max(max_abs, std::abs(dets[i]));
  }
  for (const Complex& d : dets)
    if (std::abs(d) < 1e-12 * max_abs)
      throw NumericalError("winding_number: base point lies on the PBC locus "
                           "(vanishing determinant on the k-grid)");

  double accumulated = 0.0;
  for (int i = 0; i < k_samples; ++i) {
    const Complex ratio = dets[(i + 1) % k_samples] / dets[i];
    accumulated += std::arg(ratio); // branch-corrected increment in (-pi, pi]
  }

  WindingResult out;
  out.base_point = base_point;
  out.raw_phase = accumulated / (2.0 * std::numbers::pi);
  out.k_samples = k_samples;
  const double rounded = std::round(out.raw_phase);
  if (std::abs(out.raw_phase - rounded) > 0.1)
    throw NumericalError("winding_number: accumulated phase " +
                         std::to_string(out.raw_phase) +
                         " is not close to an integer; refine k_samples");
  out.winding = static_cast<int>(rounded);
  return out;
}

std::optional<Complex> auto_base_point(const ChainParams& params, int k_samples) {
  const auto locus = pbc_locus(params, k_samples);
  for (int band = 0; band < 2; ++band) {
    std::vector<Complex> poly;
    poly.reserve(locus.size());
    for (const auto& pt : locus) poly.push_back(pt.band[band]);
    Complex centroid{};
    for (const Complex& z : poly) centroid += z;
    centroid /= static_cast<double>(poly.size());
    if (point_in_polygon(centroid, poly)) return centroid;
  }
  return std::nullopt;
}

LocalizationSummary localization_summary(const SpectrumResult& spectrum, int n) {
  if (spectrum.profiles.cols() != n)
    throw ConfigError("localization_summary: profile width does not match n");
  LocalizationSummary out;
  out.centers.reserve(spectrum.modes());
  double sum = 0.0;
  for (int m = 0; m < spectrum.modes(); ++m) {
    double xbar = 0.0;
    for (int j = 1; j <= n; ++j) xbar += j * spectrum.profiles(m, j - 1);
    out.centers.push_back(xbar);
    sum += xbar;
  }
  out.mean_center = sum / spectrum.modes();
  const double mid = (n + 1) / 2.0;
  if (out.mean_center < mid - n / 4.0)
    out.verdict = Localization::Left;
  else if (out.mean_center > mid + n / 4.0)
    out.verdict = Localization::Right;
  else
    out.verdict = Localization::Extended;
  return out;
}

Vector sorted_eigenvalues(const Vector& ev) {
  std::vector<Complex> tmp(ev.data(), ev.data() + ev.size());
  std::sort(tmp.begin(), tmp.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return Eigen::Map<const Vector>(tmp.data(), static_cast<Eigen::Index>(tmp.size()));
}

std::vector<DeltaSweepRow> sweep_delta(const ChainParams& params_template,
                                       const std::vector<double>& delta_over_v,
                                       int threads) {
  if (delta_over_v.empty()) throw ConfigError("sweep_delta: empty grid");
  std::vector<DeltaSweepRow> rows(delta_over_v.size());
  parallel_for(delta_over_v.size(), threads, [&](std::size_t i) {
    ChainParams p = params_template;
    p.delta = delta_over_v[i] * p.v;
    rows[i].delta_over_v = delta_over_v[i];
    rows[i].eigenvalues =
        sorted_eigenvalues(diagonalize(model::build_real_space(p)).eigenvalues);
  });
  return rows;
}

double eigenvalue_matching_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw ConfigError("eigenvalue_matching_distance: size mismatch");
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_j = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a(i) - b(j));
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_distance(const std::vector<Complex>& a,
                          const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from,
                     const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace nhchain::spectral
