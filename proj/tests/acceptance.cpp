// End-to-end acceptance checks. Each numbered check prints one pass/fail
// line; the process exits nonzero if any check fails.
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "nhchain/csv.hpp"
#include "nhchain/dynamics.hpp"
#include "nhchain/model.hpp"
#include "nhchain/optimize.hpp"
#include "nhchain/scattering.hpp"
#include "nhchain/spectral.hpp"
#include "oracles.hpp"

using namespace nhchain;

namespace {

int failures = 0;

void report(int id, const char* label, bool ok, const std::string& detail) {
  std::printf("criterion %2d [%s]: %s%s%s\n", id, label, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : " - ", detail.c_str());
  if (!ok) ++failures;
}

ChainParams figure2_chain(double delta_over_v, Boundary bc = Boundary::Open) {
  return ChainParams::reducible(10, -delta_over_v, -1.0, 1.0, 0.0, bc);
}

ChainParams figure3_chain(int n, double delta_over_v, double v = -1.0,
                          double gamma = 1.0) {
  return ChainParams::reducible(n, delta_over_v * v, v, 0.5 * std::abs(v), gamma);
}

// 1: eigenvalue clusters {-2, 0, 2} plus SVD rank deficiency at the centers.
void criterion_clusters() {
  const Matrix h = model::build_real_space(figure2_chain(1.0));
  const auto res = spectral::diagonalize(h);
  bool clustered = true;
  int counts[3] = {0, 0, 0};
  const double centers[3] = {-2.0, 0.0, 2.0};
  for (int m = 0; m < res.modes(); ++m) {
    bool placed = false;
    for (int c = 0; c < 3; ++c)
      if (std::abs(res.eigenvalues(m) - centers[c]) <= 0.2) {
        ++counts[c];
        placed = true;
        break;
      }
    clustered = clustered && placed;
  }
  clustered = clustered && counts[0] == 9 && counts[1] == 2 && counts[2] == 9;

  bool rank_deficient = true;
  for (double e : centers) {
    const Matrix shifted = h - e * Matrix::Identity(h.rows(), h.cols());
    const Eigen::JacobiSVD<Matrix> svd(shifted);
    const auto& sv = svd.singularValues();
    rank_deficient =
        rank_deficient && sv(sv.size() - 1) <= 1e-10 * sv(0);
  }
  report(1, "spectrum clusters", clustered && rank_deficient,
         "clusters " + std::to_string(counts[0]) + "/" +
             std::to_string(counts[1]) + "/" + std::to_string(counts[2]) +
             " at {-2,0,2}, rank deficiency at each center: " +
             (rank_deficient ? "yes" : "no"));
}

// 2: winding numbers +1 / -1 / 0.
void criterion_winding() {
  bool ok = true;
  std::string detail;
  const struct {
    double ratio;
    Complex base;
    int expected;
  } cases[] = {{1.0, {1.0, 0.0}, 1}, {-1.0, {1.0, 0.0}, -1}, {0.0, {1.0, 1.0}, 0}};
  for (const auto& c : cases) {
    const auto w = spectral::winding_number(figure2_chain(c.ratio), c.base, 1024);
    const bool good =
        w.winding == c.expected && std::abs(w.raw_phase - c.expected) <= 1e-3;
    ok = ok && good;
    if (!detail.empty()) detail += ", ";
    detail += "W=" + std::to_string(w.winding);
  }
  report(2, "winding numbers", ok, detail + " for delta/v = 1, -1, 0");
}

// 3: localization verdicts.
void criterion_localization() {
  auto verdict = [](double ratio) {
    const auto res =
        spectral::diagonalize(model::build_real_space(figure2_chain(ratio)));
    return spectral::localization_summary(res, 10).verdict;
  };
  const bool ok = verdict(1.0) == spectral::Localization::Left &&
                  verdict(0.0) == spectral::Localization::Extended &&
                  verdict(-1.0) == spectral::Localization::Right;
  report(3, "localization verdicts", ok,
         "LEFT / EXTENDED / RIGHT for delta/v = 1 / 0 / -1");
}

// 4: real vs complex spectral regimes.
void criterion_reality() {
  auto max_im = [](double ratio) {
    const auto res =
        spectral::diagonalize(model::build_real_space(figure2_chain(ratio)));
    double m = 0.0;
    for (int i = 0; i < res.modes(); ++i)
      m = std::max(m, std::abs(res.eigenvalues(i).imag()));
    return m;
  };
  bool ok = true;
  for (double r : {-2.0, -1.5, -1.2, 1.2, 1.5, 2.0}) ok = ok && max_im(r) <= 1e-6;
  for (double r : {-0.5, 0.5}) ok = ok && max_im(r) > 0.1;
  report(4, "spectral reality", ok,
         "real for |delta/v| in {1.2, 1.5, 2}, complex at |delta/v| = 0.5");
}

// 5: unitary equivalence of the chain and its SSH form.
void criterion_equivalence() {
  bool ok = true;
  double worst_generic = 0.0, worst_ep = 0.0, worst_elem = 0.0;
  for (int n : {2, 5, 10}) {
    for (double ratio : {0.5, 1.7, 1.0, -1.0}) {
      const ChainParams p = ChainParams::reducible(n, -ratio, -1.0, 1.0);
      const Matrix h = model::build_real_space(p);
      const Matrix hp = model::build_ssh_equivalent(p);
      const Matrix u = model::unitary_transform(n);
      const double elem = (u.adjoint() * h * u - hp).cwiseAbs().maxCoeff();
      worst_elem = std::max(worst_elem, elem);
      const double dist = spectral::eigenvalue_matching_distance(
          spectral::sorted_eigenvalues(spectral::diagonalize(h).eigenvalues),
          spectral::sorted_eigenvalues(spectral::diagonalize(hp).eigenvalues));
      if (std::abs(std::abs(ratio) - 1.0) < 1e-12)
        worst_ep = std::max(worst_ep, dist);
      else
        worst_generic = std::max(worst_generic, dist);
    }
  }
  ok = worst_elem <= 1e-12 && worst_generic <= 1e-8 && worst_ep <= 0.2;
  report(5, "unitary equivalence", ok,
         "element-wise " + csv::format_number(worst_elem) + ", matching " +
             csv::format_number(worst_generic) + " (generic) / " +
             csv::format_number(worst_ep) + " (exceptional points)");
}

// 6: anti-PT symmetry over random parameter sets.
void criterion_anti_pt() {
  oracles::Rng rng(2024);
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    // the periodic seam respects the staggered parity only for even n
    ChainParams p = oracles::random_reducible(rng, 2, 12, /*even_n=*/true);
    p.bc = (trial % 2 == 0) ? Boundary::Open : Boundary::Periodic;
    const auto res = model::check_anti_pt(model::build_real_space(p), p.n);
    worst = std::max(worst, res.residual);
    ok = ok && res.symmetric;
  }
  report(6, "anti-PT symmetry", ok && worst <= 1e-12,
         "max residual " + csv::format_number(worst) + " over 50 sets");
}

// 7: unidirectional dynamics.
void criterion_unidirectional() {
  const ChainParams p = figure3_chain(5, -1.0, -0.1, 0.1);
  const auto bwd = dynamics::evolve(p, dynamics::transmitting_initial(p, false),
                                    60.0, 0.1);
  double left = 0.0;
  for (int s = 0; s < bwd.samples(); ++s)
    left = std::max(left,
                    std::max(bwd.occupation_a(s, 1), bwd.occupation_b(s, 1)));
  const auto fwd = dynamics::evolve(p, dynamics::transmitting_initial(p, true),
                                    60.0, 0.1);
  double imbalance = 0.0;
  for (int s = 0; s < fwd.samples(); ++s)
    for (int j = 1; j <= 5; ++j)
      imbalance = std::max(
          imbalance, std::abs(fwd.occupation_a(s, j) - fwd.occupation_b(s, j)));
  report(7, "unidirectional dynamics", left <= 1e-12 && imbalance <= 1e-9,
         "backward leak " + csv::format_number(left) + ", forward |a|^2-|b|^2 " +
             csv::format_number(imbalance));
}

// 8: Eq.-(5)-style ratio oracle over the delta/v grid.
void criterion_ratio() {
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(-0.95 + 1.9 * i / 24.0);
  const auto rows = scattering::sweep_transmission(figure3_chain(5, 0.0), grid, 0);
  double worst = 0.0;
  for (const auto& r : rows)
    worst = std::max(worst, std::abs(r.ratio_numeric - r.ratio_analytic) /
                                std::abs(r.ratio_analytic));
  const auto at_v0 = scattering::nonreciprocity_ratio(
      ChainParams::reducible(5, 0.4, 0.0, 0.5, 1.0));
  const bool ok = worst <= 1e-6 && std::abs(at_v0.numeric - 1.0) <= 1e-9;
  report(8, "nonreciprocity ratio", ok,
         "max relative error " + csv::format_number(worst) +
             ", ratio at v=0: " + csv::format_number(at_v0.numeric));
}

// 9: transmission closed form vs phase-optimized drive.
void criterion_transmission_oracle() {
  oracles::Rng rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ChainParams p = oracles::random_reducible(rng, 2, 5);
    p.gamma = rng.uniform(0.3, 1.5);
    p.v = rng.uniform(-1.5, -0.2);
    for (auto dir :
         {scattering::Direction::Forward, scattering::Direction::Backward}) {
      const auto res = scattering::transmission(p, dir);
      worst = std::max(worst, std::abs(res.efficiency - res.closed_form) /
                                  std::max(res.closed_form, 1e-12));
    }
  }
  report(9, "transmission closed form", worst <= 1e-6,
         "max relative deviation " + csv::format_number(worst) +
             " over 10 parameter sets");
}

// 10: optimized-transmission limits of the length sweep.
void criterion_optimum_limits() {
  const auto records = optimize::sweep_n(2, 20, 1e-6, 0);
  const auto plateau = optimize::plateau_check(records);
  const auto& last = records.back();
  const bool bands = std::abs(plateau.extrapolated_t_max - 0.84) <= 0.01 &&
                     std::abs(plateau.extrapolated_loss_db - 0.76) <= 0.02 &&
                     std::abs(plateau.extrapolated_w_over_v - 0.50) <= 0.02 &&
                     std::abs(plateau.extrapolated_v_over_gamma - 0.71) <= 0.02;
  const bool contrast = std::abs(last.contrast_percent - 100.0) <= 1e-6;
  const bool identity =
      std::abs(plateau.extrapolated_loss_db +
               10.0 * std::log10(plateau.extrapolated_t_max)) <= 1e-9 &&
      std::abs(last.insertion_loss_db + 10.0 * std::log10(last.t_max)) <= 1e-9;
  report(10, "optimum limits", bands && contrast && identity,
         "large-n limits T=" + csv::format_number(plateau.extrapolated_t_max) +
             ", L=" + csv::format_number(plateau.extrapolated_loss_db) +
             " dB, w/v=" + csv::format_number(plateau.extrapolated_w_over_v) +
             ", v/gamma=" + csv::format_number(plateau.extrapolated_v_over_gamma));
}

// 11: exponential scaling of the nonreciprocity ratio.
void criterion_scaling() {
  const double ratio = 0.5, v = -1.0;
  const double slope_ref =
      2.0 * std::log(std::abs((ratio * v - v) / (ratio * v + v)));
  std::vector<double> logs;
  for (int n = 3; n <= 12; ++n)
    logs.push_back(std::log(
        scattering::nonreciprocity_ratio(figure3_chain(n, ratio)).numeric));
  const double slope = (logs.back() - logs.front()) / (logs.size() - 1.0);
  const bool ok = std::abs(slope - slope_ref) <= 0.01 * std::abs(slope_ref);
  report(11, "exponential scaling", ok,
         "slope " + csv::format_number(slope) + " vs analytic " +
             csv::format_number(slope_ref));
}

// 12: cross-cutting property suite on randomized inputs.
void criterion_properties() {
  oracles::Rng rng(7777);
  bool ok = true;
  std::string detail;

  // eigensolver residual gate + Bloch/real-space PBC consistency
  double worst_bloch = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    ChainParams p = oracles::random_reducible(rng, 2, 10);
    p.bc = Boundary::Periodic;
    const auto res = spectral::diagonalize(model::build_real_space(p));
    const auto ring = oracles::ring_spectrum(p);
    Vector oracle(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
      oracle(static_cast<Eigen::Index>(i)) = ring[i];
    worst_bloch = std::max(
        worst_bloch, spectral::eigenvalue_matching_distance(
                         spectral::sorted_eigenvalues(res.eigenvalues),
                         spectral::sorted_eigenvalues(oracle)));
  }
  ok = ok && worst_bloch <= 1e-9;
  detail += "bloch/real-space " + csv::format_number(worst_bloch);

  // shift identity
  {
    const ChainParams p = oracles::random_reducible(rng, 3, 8);
    const Matrix h = model::build_real_space(p);
    const Complex c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    Vector shifted = spectral::sorted_eigenvalues(
        spectral::diagonalize(h + c * Matrix::Identity(h.rows(), h.cols()))
            .eigenvalues);
    shifted.array() -= c;
    const double d = spectral::eigenvalue_matching_distance(
        spectral::sorted_eigenvalues(spectral::diagonalize(h).eigenvalues),
        shifted);
    ok = ok && d <= 1e-9;
    detail += ", shift " + csv::format_number(d);
  }

  // trajectory norm monotonicity
  {
    ChainParams p = oracles::random_reducible(rng, 3, 6);
    if (p.v > -0.05) p.v = -0.5;
    const auto traj = dynamics::evolve(
        p, dynamics::unit_state(p.n, 1, rng.uniform(0.0, 6.28)), 20.0, 0.1);
    double worst_rise = 0.0;
    for (int s = 1; s < traj.samples(); ++s)
      worst_rise = std::max(
          worst_rise, traj.total_occupation(s) - traj.total_occupation(s - 1));
    ok = ok && worst_rise <= 1e-10;
    detail += ", norm rise " + csv::format_number(worst_rise);
  }

  // CSV round trip
  {
    namespace fs = std::filesystem;
    const fs::path file =
        fs::temp_directory_path() / "nhchain_acceptance_roundtrip.csv";
    csv::Writer w({"a", "b"});
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 20; ++i)
      data.push_back({rng.uniform(-1e3, 1e3), rng.uniform(-1.0, 1.0)});
    for (const auto& row : data) w.add_row(row);
    w.write(file);
    const auto table = csv::read(file);
    bool round = table.rows.size() == data.size();
    for (std::size_t i = 0; round && i < data.size(); ++i)
      round = table.number(i, 0) == data[i][0] && table.number(i, 1) == data[i][1];
    fs::remove(file);
    ok = ok && round;
    detail += std::string(", csv round-trip ") + (round ? "exact" : "broken");
  }

  report(12, "property suite", ok, detail);
}

}  // namespace

int main() {
  criterion_clusters();
  criterion_winding();
  criterion_localization();
  criterion_reality();
  criterion_equivalence();
  criterion_anti_pt();
  criterion_unidirectional();
  criterion_ratio();
  criterion_transmission_oracle();
  criterion_optimum_limits();
  criterion_scaling();
  criterion_properties();
  if (failures > 0) {
    std::printf("%d of 12 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
