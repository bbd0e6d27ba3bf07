#pragma once

#include <optional>
#include <vector>

#include "nhchain/model.hpp"
#include "nhchain/params.hpp"

namespace nhchain::spectral {

/// Full right eigendecomposition plus per-mode diagnostics.
struct SpectrumResult {
  Vector eigenvalues;          // 2n
  Matrix right_eigenvectors;   // columns, unit norm
  Eigen::VectorXd residuals;   // ||H psi - E psi||_2 per mode
  Eigen::MatrixXd profiles;    // row m: per-unit population, rows sum to 1

  int modes() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense non-Hermitian eigendecomposition with a residual quality gate:
/// every residual must be <= 1e-8 * ||H||_2, else NumericalError.
SpectrumResult diagonalize(const Matrix& h);

struct LocusPoint {
  double k = 0.0;
  Complex band[2]; // tracked by nearest-neighbor continuity across k
};

/// Both Bloch bands on a uniform k-grid over [-pi, pi].
std::vector<LocusPoint> pbc_locus(const ChainParams& params, int k_samples);

struct WindingResult {
  Complex base_point{};
  int winding = 0;
  double raw_phase = 0.0; // accumulated phase / 2pi before rounding
  int k_samples = 0;
};

/// Point-gap winding of det[H(k) - E_b] around the Brillouin zone.
/// Errors if the base point sits on the locus or the phase is non-integer.
WindingResult winding_number(const ChainParams& params, Complex base_point,
                             int k_samples);

/// Centroid of a band loop of the PBC locus, if it is strictly interior to
/// the loop; nullopt when no band encloses its centroid (open-arc regime).
std::optional<Complex> auto_base_point(const ChainParams& params, int k_samples);

enum class Localization { Left, Right, Extended };

struct LocalizationSummary {
  std::vector<double> centers; // per-mode center of mass, in units
  double mean_center = 0.0;
  Localization verdict = Localization::Extended;
};

/// Center-of-mass verdict: LEFT / RIGHT when the ensemble mean is more than
/// n/4 away from the chain middle, else EXTENDED.
LocalizationSummary localization_summary(const SpectrumResult& spectrum, int n);

struct DeltaSweepRow {
  double delta_over_v = 0.0;
  Vector eigenvalues; // sorted lexicographically by (Re, Im)
};

/// Full OBC spectrum per delta/v grid point; params_template supplies
/// everything except delta, which is set to (delta/v) * v.
std::vector<DeltaSweepRow> sweep_delta(const ChainParams& params_template,
                                       const std::vector<double>& delta_over_v,
                                       int threads = 1);

/// Lexicographic (Re, Im) sort used by all spectrum tables.
Vector sorted_eigenvalues(const Vector& ev);

/// Greedy minimum-distance matching; returns the largest matched distance.
double eigenvalue_matching_distance(const Vector& a, const Vector& b);

/// Directed-symmetric Hausdorff distance between two complex point sets.
double hausdorff_distance(const std::vector<Complex>& a,
                          const std::vector<Complex>& b);

}  // namespace nhchain::spectral
