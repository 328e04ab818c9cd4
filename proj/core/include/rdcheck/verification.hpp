#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rdcheck/boundary.hpp"
#include "rdcheck/rd_integral.hpp"

namespace rdcheck {

/// Random strictly positive unit vector on the boundary grid: the square of
/// a Gaussian trigonometric polynomial of the given bandwidth plus a small
/// floor, normalized in the grid norm. The result has bandwidth
/// 2 * bandwidth, its square 4 * bandwidth; a K-point average kills every
/// mode not divisible by K/2, so K-averages of the square are exactly
/// constant when 8 * bandwidth is below the K-grid size.
BoundaryFunction random_positive_unit(std::mt19937_64& rng, int bandwidth,
                                      const QuadratureGrid& grid);

/// Tensor (linearized) action on two-variable kernels sampled on the product
/// of the boundary grid with itself:
///   (sigma(g) F)(x, y) = c(g,x)^{1/2} c(g,y)^{1/2} F(act(g^-1,x), act(g^-1,y)),
/// evaluated back on the product grid by per-axis band-limited interpolation
/// (modes |m| <= N/2 - 1). Exact for kernels of per-axis bandwidth < N/2.
Eigen::MatrixXd sigma_apply(const GroupElement& g, const QuadratureGrid& grid,
                            const Eigen::MatrixXd& f);

/// Product-grid pairing sum_{ij} w_i w_j A_ij B_ij.
double product_pairing(const QuadratureGrid& grid, const Eigen::MatrixXd& a,
                       const Eigen::MatrixXd& b);

/// |<lambda(g) xi, xi>^2 - <sigma(g)(xi (x) xi), xi (x) xi>|, the two sides
/// computed through the quasi-regular and tensor code paths respectively.
double linearization_gap(const GroupElement& g, const BoundaryFunction& xi);

/// One row of a domination sweep at H = (t, -t): the squared grid spherical
/// function, the tensor pairing <sigma(exp H) F, F> for F the K-average of
/// xi, and their margin xi_sq - pairing (nonnegative for unit xi whose
/// squared K-average is constant).
struct DominationSample {
  double t = 0.0;
  double xi_sq = 0.0;
  double pairing = 0.0;
  double margin = 0.0;
};

std::vector<DominationSample> domination_profile(const BoundaryFunction& xi,
                                                 const QuadratureGrid& k_grid,
                                                 const std::vector<double>& t_values);

/// Pointwise Cauchy-Schwarz chain on the K-averages: F(x, y) <=
/// sqrt(f(x) f(y)), the spread of f around 1, and the largest entry of F.
/// violations counts nodes or node pairs breaking their bound by more than
/// tol.
struct CauchySchwarzStat {
  long violations = 0;
  double f_spread = 0.0;    ///< max_j |f_j - 1|
  double max_entry = 0.0;   ///< max_ij F_ij
  double worst_gap = 0.0;   ///< max_ij (F_ij - sqrt(f_i f_j)), clamped at 0
};

CauchySchwarzStat cauchy_schwarz_chain_check(const BoundaryFunction& xi,
                                             const QuadratureGrid& k_grid,
                                             double tol);

/// Master inequality at one test vector: the fully discretized left side
///   sum_H w_H (1+|H|)^{-d} J(H) sum_{k1,k2} w w <lambda(k1 e^H k2) xi, xi>^2
/// against the constant estimated by rd_constant. The K x boundary grids
/// must be commensurate (k_grid size divides boundary size) so rotated
/// translates land on grid nodes.
struct MasterStat {
  double lhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;  ///< constant - lhs
  bool pass = false;
};

MasterStat rd_master_check(const RootDatum& datum, const BoundaryFunction& xi,
                           const QuadratureGrid& k_grid, double d, double radius,
                           int chamber_points, const RDReport& report, double tol);

/// Configuration of a randomized verification run over SL(2,R).
struct VerificationConfig {
  int boundary_points = 512;
  int k_points = 64;
  int bandwidth = 7;
  int chamber_points = 48;  ///< chamber grid of the master left side
  double d = 4.0;
  double radius = 20.0;
  int trials = 100;
  std::uint64_t seed = 42;
  /// Base tolerance; the per-check thresholds below scale linearly in
  /// tol / 1e-8.
  double tol = 1e-8;
  NormKind norm = NormKind::killing;
};

/// Violation count and worst observation of one check across a run.
struct CheckStat {
  long violations = 0;
  double worst = 0.0;  ///< largest gap (linearization) or most negative margin
};

struct VerificationRun {
  VerificationConfig config;
  RDReport constant_report;    ///< rd_constant backing the master inequality
  CheckStat linearization;     ///< threshold 1e-9 * (tol / 1e-8)
  CheckStat domination;        ///< margin floor -1e-12 * (tol / 1e-8)
  CheckStat cauchy_schwarz;    ///< threshold tol
  CheckStat master;            ///< relative slack 1e-9 * (tol / 1e-8)
  double master_lhs_worst = 0.0;   ///< largest lhs over trials
  double master_margin_min = 0.0;  ///< smallest margin over trials
  bool pass = false;
};

/// Runs trials rounds of: draw a random positive unit vector, a random group
/// element of length at most 5, then the linearization identity, the
/// domination sweep over t in {0.5, 1.0, ..., 5.0}, the Cauchy-Schwarz
/// chain, and the master inequality. Deterministic for a fixed seed.
VerificationRun run_verification(const VerificationConfig& config);

}  // namespace rdcheck
