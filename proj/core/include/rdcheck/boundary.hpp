#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rdcheck/decompositions.hpp"
#include "rdcheck/quadrature.hpp"

namespace rdcheck {

/// Action of SL(2,R) on the boundary circle of lines: act(g, theta) is the
/// angle in [0, pi) of the vector g u_theta, u_theta = (cos theta, sin theta).
double act(const GroupElement& g, double theta);

/// Radon-Nikodym cocycle of the pushforward of the uniform probability
/// measure under the boundary action: c(g, theta) = ||g^{-1} u_theta||^{-2}.
/// Satisfies the chain rule c(gh, theta) = c(g, theta) c(h, act(g^{-1}, theta))
/// and integrates to 1 over the boundary for every g.
double cocycle(const GroupElement& g, double theta);

/// Rank-independent form of the same kernel through the Iwasawa projection:
/// exp(-2 rho(H_iw(g^{-1} k))) for k in SO(n). For n = 2 and k the rotation
/// by theta this coincides with cocycle(g, theta).
double cocycle_iwasawa(const RootDatum& datum, const GroupElement& g,
                       const Eigen::MatrixXd& k);

/// A scalar function sampled on a boundary grid; values are parallel to the
/// grid nodes.
struct BoundaryFunction {
  QuadratureGrid grid;
  std::vector<double> values;
};

/// Constant function on the given grid.
BoundaryFunction constant_function(const QuadratureGrid& grid, double value);

/// Weighted pairing sum_j w_j f_j g_j. Throws std::invalid_argument when the
/// two functions live on different grids.
double inner(const BoundaryFunction& f, const BoundaryFunction& g);

/// sqrt(inner(f, f)).
double norm(const BoundaryFunction& f);

/// Band-limited interpolation from samples on the uniform boundary grid:
/// the unique pi-periodic trigonometric polynomial with modes |m| <= N/2
/// (the Nyquist mode reduced to its sine component, which is the one the
/// midpoint grid resolves) through the N samples. Exact on functions of
/// bandwidth < N/2; construction O(N^2), evaluation O(N).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const BoundaryFunction& f);

  double operator()(double theta) const;

  /// Complex coefficient of e^{2 i m theta}, m = 0 .. modes().
  std::complex<double> coefficient(int m) const { return coeff_.at(m); }
  int modes() const { return static_cast<int>(coeff_.size()) - 1; }

 private:
  std::vector<std::complex<double>> coeff_;
  double nyquist_sine_ = 0.0;
  int points_ = 0;
};

/// Quasi-regular action on sampled functions:
///   (lambda(g) xi)(theta) = c(g, theta)^{1/2} xi(act(g^{-1}, theta)),
/// a unitary operator on the boundary L^2 space. Requires the uniform
/// boundary grid so the translate can be evaluated band-limitedly.
BoundaryFunction quasi_regular_apply(const GroupElement& g,
                                     const BoundaryFunction& xi);

/// K-average of the squared rotated translates,
///   f(theta) = sum_k w_k xi(theta - phi_k)^2,
/// sampled on xi's grid; k_grid must be a uniform circle grid. For xi of
/// unit norm and bandwidth compatible with the K-grid this is constant 1.
BoundaryFunction k_average_f(const BoundaryFunction& xi,
                             const QuadratureGrid& k_grid);

/// Matrix of the two-variable K-average
///   F(theta_i, theta_j) = sum_k w_k xi(theta_i - phi_k) xi(theta_j - phi_k)
/// on the product of xi's grid with itself. Symmetric positive semidefinite.
Eigen::MatrixXd k_average_F(const BoundaryFunction& xi,
                            const QuadratureGrid& k_grid);

}  // namespace rdcheck
