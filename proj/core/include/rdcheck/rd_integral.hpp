#pragma once

#include <vector>

#include "rdcheck/quadrature.hpp"
#include "rdcheck/root_system.hpp"
#include "rdcheck/spherical.hpp"

namespace rdcheck {

/// Grid parameters for the rapid-decay integral: the per-axis Gauss count of
/// the chamber grid and the density/outer-size knobs of the adapted
/// spherical-function rules.
struct RDGrids {
  int chamber_points = 0;
  double xi_density = 0.0;
  int xi_outer = 0;

  /// Defaults tuned per group: {96, 6.0, 32} for SL(2,R), {32, 4.0, 24} for
  /// SL(3,R). Throws std::invalid_argument for other ranks.
  static RDGrids defaults_for(const RootDatum& datum);

  /// All knobs scaled by the factor (counts rounded up).
  RDGrids scaled(double factor) const;
};

/// Chamber-side integrand of the rapid-decay functional,
///   Xi(H)^2 (1 + |H|)^{-d} J(H),
/// with Xi evaluated on the adapted grid selected by grids. Requires H in
/// the closed positive chamber.
double rd_integrand(const RootDatum& datum, const ChamberVector& H, double d,
                    const RDGrids& grids);

/// Tail certificate for the region |H| > radius. finite is false exactly
/// when d <= 2r + dim a, where the majorization
///   Xi(H)^2 J(H) <= C^2 (1 + |H|)^{2r} e^{-2 rho(H)} e^{2 rho(H)}
/// integrates to
///   C^2 omega_m radius^{2r - d + m} / (d - 2r - m),   m = dim a.
struct TailBound {
  bool finite = false;
  double value = 0.0;
};

TailBound tail_bound(const RootDatum& datum, double d, double radius, double c);

/// Result of a constant computation at one exponent and truncation radius.
struct RDReport {
  int n = 0;
  double d = 0.0;
  double radius = 0.0;
  RDGrids grids;
  double estimate = 0.0;       ///< integral over {|H| <= radius}
  double c_est = 0.0;          ///< best envelope ratio seen on the chamber nodes
  double c_certified = 0.0;    ///< 2 * c_est, the constant the tail bound uses
  TailBound tail;
  bool divergent_tail = false; ///< d <= threshold, certificate impossible
  bool converged = false;
  std::vector<double> doubling_radii;     ///< radius/4, radius/2, radius
  std::vector<double> doubling_estimates; ///< partial integrals at those radii
  std::size_t chamber_nodes = 0;
};

/// Estimates the rapid-decay integral over the chamber ball of the given
/// radius. One spherical-function evaluation per chamber node feeds both the
/// integral and the on-the-run envelope fit. The report is converged when
/// the certified tail is at most 5% of the estimate and both radius
/// doublings radius/4 -> radius/2 -> radius agree within the certified tail
/// at the smaller radius. A d at or below the threshold yields a report
/// flagged divergent_tail instead of an exception.
RDReport rd_constant(const RootDatum& datum, double d, double radius,
                     const RDGrids& grids);

/// One partial integral of a divergence scan.
struct RadiusEstimate {
  double radius = 0.0;
  double estimate = 0.0;
};

/// Partial integrals at strictly increasing radii, for exhibiting divergence
/// below the threshold. Makes no convergence claim.
std::vector<RadiusEstimate> divergence_scan(const RootDatum& datum, double d,
                                            const std::vector<double>& radii,
                                            const RDGrids& grids);

}  // namespace rdcheck
