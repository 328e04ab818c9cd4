#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "rdcheck/root_system.hpp"

namespace rdcheck {

/// Identifies the construction of a grid. Band-limited interpolation is only
/// valid on boundary_uniform grids; the other kinds are pure quadrature.
enum class GridKind {
  interval,
  circle_uniform,
  boundary_uniform,
  boundary_adapted,
  so3_euler,
  so3_matrix,
  chamber,
};

/// A quadrature rule: size() nodes of dimension dim, flattened row-major
/// into nodes, with one weight per node. Weight normalization depends on the
/// factory (probability grids sum to 1, chamber grids carry the volume
/// element).
struct QuadratureGrid {
  GridKind kind = GridKind::interval;
  int dim = 1;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* node(std::size_t i) const { return nodes.data() + dim * i; }
};

/// Gauss-Legendre rule with the given number of points on [a, b]. Nodes are
/// computed by Newton iteration on the Legendre recurrence and are accurate
/// to ~1e-15; the rule is exact on polynomials of degree 2*points - 1.
/// Throws std::invalid_argument for points < 1 or a >= b.
QuadratureGrid gauss_interval(int points, double a, double b);

/// Gauss rule on [0, pi/2] adapted to an integrand feature of relative
/// width `width` at 0: the substitution tan x = width * sinh v places nodes
/// on [0, pi/4] with density per unit of v, and a plain n_outer-point rule
/// covers [pi/4, pi/2]. Building level of the adapted boundary and SO(3)
/// grids, exposed for integrands with a single known spike scale.
QuadratureGrid adapted_interval_rule(double width, double density = 6.0,
                                     int n_outer = 32);

/// Midpoint rule on the circle [0, 2*pi) with uniform probability weights
/// 1/points. Exact on trigonometric polynomials of degree < points.
QuadratureGrid circle_probability_grid(int points);

/// Midpoint rule on the boundary circle [0, pi) (angles mod pi) with
/// probability weights 1/points. points must be even so the grid is
/// symmetric under theta -> pi - theta.
QuadratureGrid boundary_grid(int points);

/// Boundary probability grid adapted to the integrand spike of
/// xi_boundary(H) at theta = 0 for H = (t, -t): the substitution tan(theta)
/// = e^{-2t} sinh(v) places Gauss nodes on [0, pi/4] with density
/// proportional to the spike resolution, a plain Gauss rule covers
/// [pi/4, pi/2], and the rule is mirrored across pi/2. The mirror image of
/// a node x is stored as the angle -x, the same projective point as pi - x;
/// this keeps spike offsets exactly representable near the wrap, where the
/// double spacing at pi would otherwise absorb them. Weights sum to 1.
/// density scales the number of substituted nodes per unit of v; n_outer is
/// the plain-rule size. Requires t >= 0.
QuadratureGrid adapted_boundary_grid(double t, double density = 6.0,
                                     int n_outer = 32);

/// Product probability grid on SO(3) in ZYZ Euler angles (alpha, beta,
/// gamma): midpoint rules with points nodes in alpha and gamma, a Gauss rule
/// with points nodes in cos(beta). Node layout is (alpha, beta, gamma),
/// dim 3; weights sum to 1 and integrate Haar measure sin(beta)/(8 pi^2).
/// Throws std::invalid_argument for points < 2.
QuadratureGrid so3_probability_grid(int points);

/// Rotation matrix Rz(alpha) * Ry(beta) * Rz(gamma).
Eigen::Matrix3d rotation_from_euler(double alpha, double beta, double gamma);

/// SO(3) probability grid adapted to the Harish-Chandra integrand of
/// SL(3,R) at the chamber point H: spherical coordinates around e_1 with a
/// sinh-substituted rule per level, each level's node density matched to the
/// local spike width of ||e^{-H} k e_1||^{-1} ||e^{H} k e_3||^{-1}. Nodes
/// are explicit rotation matrices flattened row-major (dim 9) so consumers
/// treat the grid exactly like any other K-grid. Weights sum to 1. Node
/// count grows linearly with max_i |h_i| and with density. Requires H in
/// the closed positive chamber of sl(3,R).
QuadratureGrid so3_adapted_grid(const ChamberVector& H, double density = 4.0,
                                int n_outer = 24);

/// Gauss product grid over the closed ball {|H| <= radius} intersected with
/// the open positive chamber, in the norm selected by the datum. Nodes are
/// diagonal coordinates (dim n); weights carry the flat volume element of
/// the chamber so that the weight sum equals the truncated cone volume.
/// n = 2: points Gauss nodes along the ray. n = 3: polar coordinates in the
/// whitened simple-root plane, points x points Gauss nodes over sector x
/// radius. Throws std::invalid_argument for radius <= 0, points < 1, or
/// n >= 4 (not implemented).
QuadratureGrid chamber_grid(const RootDatum& datum, double radius, int points);

}  // namespace rdcheck
