#pragma once

#include <vector>

#include "rdcheck/boundary.hpp"
#include "rdcheck/decompositions.hpp"
#include "rdcheck/quadrature.hpp"
#include "rdcheck/root_system.hpp"

namespace rdcheck {

/// Harish-Chandra spherical function of SL(2,R) at the chamber point
/// H = (t, -t), computed by the boundary integral
///   Xi(H) = sum_j w_j c(exp(H), theta_j)^{1/2}.
/// Requires n = 2, a boundary grid, and H in the closed chamber.
double xi_boundary(const RootDatum& datum, const ChamberVector& H,
                   const QuadratureGrid& grid);

/// Spherical function by the compact-side integral
///   Xi(g) = sum_k w_k exp(-rho(H_iw(g k)))
/// over a K-grid: a circle grid for n = 2, an Euler-angle or rotation-matrix
/// SO(3) grid for n = 3. Normalized so Xi(e) = 1.
double xi_iwasawa(const RootDatum& datum, const GroupElement& g,
                  const QuadratureGrid& k_grid);

/// Spherical function of SL(3,R) at exp(H) by the compact-side integral in
/// sphere coordinates: two adapted quadrature levels over the direction
/// n = k e3 (polar angle Theta from e1, azimuth Phi), and the exact value
///   (1/2pi) int |exp(H) u(gamma)|^{-1} dgamma = 1 / agm(lam1^{1/2}, lam2^{1/2})
/// of the inner circle average, with lam1 >= lam2 the eigenvalues of the
/// quadratic form |exp(H) u|^2 on the circle perpendicular to n. Orders of
/// magnitude faster than a materialized SO(3) grid at the same accuracy.
/// Requires H in the closed positive chamber.
double xi_so3_adapted(const RootDatum& datum, const ChamberVector& H,
                      double density = 4.0, int n_outer = 24);

/// One sample of the spherical function along the standard chamber ray,
/// together with the decay-envelope ratio
///   xi * e^{rho(H)} / (1 + |H|)^r.
struct XiSample {
  double t = 0.0;     ///< ray parameter: H = (t, -t) or (t, 0, -t)
  double xi = 0.0;
  double envelope_ratio = 0.0;
};

/// Samples Xi at count + 1 evenly spaced ray parameters on [0, t_max] using
/// the adapted grids (boundary for n = 2, SO(3) for n = 3), so the values
/// stay accurate deep into the chamber. Requires n in {2, 3}.
std::vector<XiSample> sample_spherical_ray(const RootDatum& datum, double t_max,
                                           int count);

/// Envelope constants from sampled ratios: c_est is the largest observed
/// ratio, and the certified constant doubles it to absorb the tail of the
/// fit region.
struct EnvelopeFit {
  double c_est = 0.0;
  double c_certified = 0.0;
};

EnvelopeFit decay_envelope_fit(const std::vector<XiSample>& samples);

}  // namespace rdcheck
