#include "rdcheck/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rdcheck {

namespace {

constexpr double k_pi = std::numbers::pi;

/// Plain node/weight pair used while assembling composite rules.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre nodes on [-1, 1], ascending, via Newton iteration on the
/// three-term recurrence. Nodes converge quadratically; 1e-15 is reached in
/// a handful of steps from the Tricomi estimate.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(k_pi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      deriv = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / deriv;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * deriv * deriv);
  }
}

/// Reference rules on [-1, 1] cached by size: adapted composite rules
/// request the same handful of sizes thousands of times while sweeping a
/// chamber, and the Newton construction dominates their cost. Entries are
/// immutable once inserted; lookups are serialized.
const Rule& legendre_reference(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    Rule rule;
    legendre_rule(n, rule.x, rule.w);
    it = cache.emplace(n, std::move(rule)).first;
  }
  return it->second;
}

Rule gauss_rule(int n, double a, double b) {
  const Rule& ref = legendre_reference(n);
  Rule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double mid = 0.5 * (a + b), len = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = mid + len * ref.x[i];
    rule.w[i] = len * ref.w[i];
  }
  return rule;
}

/// Composite rule for int_0^{pi/2} f(x) dx when f has a feature of relative
/// width `width` at x = 0: tan x = width * sinh v moves Gauss nodes in v
/// onto [0, pi/4] with spacing that tracks the feature, and a plain rule
/// covers [pi/4, pi/2]. Exactness degrades gracefully as width -> 1, where
/// the substitution is close to the identity.
Rule adapted_half_rule(double width, double density, int n_outer) {
  width = std::clamp(width, 1e-300, 1.0);
  const double vmax = std::asinh(1.0 / width);
  const int nv = static_cast<int>(std::ceil(density * vmax)) + 16;
  const Rule inner = gauss_rule(nv, 0.0, vmax);
  Rule rule;
  rule.x.reserve(nv + n_outer);
  rule.w.reserve(nv + n_outer);
  for (int i = 0; i < nv; ++i) {
    const double v = inner.x[i];
    const double xx = std::atan(width * std::sinh(v));
    const double cx = std::cos(xx);
    rule.x.push_back(xx);
    rule.w.push_back(inner.w[i] * width * std::cosh(v) * cx * cx);
  }
  const Rule outer = gauss_rule(n_outer, 0.25 * k_pi, 0.5 * k_pi);
  rule.x.insert(rule.x.end(), outer.x.begin(), outer.x.end());
  rule.w.insert(rule.w.end(), outer.w.begin(), outer.w.end());
  return rule;
}

void require_sl3_chamber(const ChamberVector& H) {
  if (H.h.size() != 3)
    throw std::invalid_argument("adapted SO(3) grid requires an sl(3,R) Cartan vector");
  if (!H.chamber || H.h[0] < H.h[1] || H.h[1] < H.h[2])
    throw std::invalid_argument("adapted SO(3) grid requires the closed positive chamber");
}

}  // namespace

QuadratureGrid gauss_interval(int points, double a, double b) {
  if (points < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  if (!(a < b)) throw std::invalid_argument("Gauss rule needs a < b");
  const Rule rule = gauss_rule(points, a, b);
  QuadratureGrid grid;
  grid.kind = GridKind::interval;
  grid.dim = 1;
  grid.nodes = rule.x;
  grid.weights = rule.w;
  return grid;
}

QuadratureGrid adapted_interval_rule(double width, double density, int n_outer) {
  if (!std::isfinite(width) || width <= 0.0)
    throw std::invalid_argument("adapted interval rule needs a positive width");
  if (density <= 0.0 || n_outer < 1)
    throw std::invalid_argument("adapted interval rule needs positive density and point count");
  const Rule rule = adapted_half_rule(width, density, n_outer);
  QuadratureGrid grid;
  grid.kind = GridKind::interval;
  grid.dim = 1;
  grid.nodes = rule.x;
  grid.weights = rule.w;
  return grid;
}

QuadratureGrid circle_probability_grid(int points) {
  if (points < 1) throw std::invalid_argument("circle grid needs at least one point");
  QuadratureGrid grid;
  grid.kind = GridKind::circle_uniform;
  grid.dim = 1;
  grid.nodes.resize(points);
  grid.weights.assign(points, 1.0 / points);
  for (int j = 0; j < points; ++j)
    grid.nodes[j] = 2.0 * k_pi * (j + 0.5) / points;
  return grid;
}

QuadratureGrid boundary_grid(int points) {
  if (points < 2 || points % 2 != 0)
    throw std::invalid_argument("boundary grid needs an even point count >= 2");
  QuadratureGrid grid;
  grid.kind = GridKind::boundary_uniform;
  grid.dim = 1;
  grid.nodes.resize(points);
  grid.weights.assign(points, 1.0 / points);
  for (int j = 0; j < points; ++j) grid.nodes[j] = k_pi * (j + 0.5) / points;
  return grid;
}

QuadratureGrid adapted_boundary_grid(double t, double density, int n_outer) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("adapted boundary grid requires t >= 0");
  if (density <= 0.0 || n_outer < 1)
    throw std::invalid_argument("adapted boundary grid needs positive density and point count");
  const Rule half = adapted_half_rule(std::exp(-2.0 * t), density, n_outer);
  QuadratureGrid grid;
  grid.kind = GridKind::boundary_adapted;
  grid.dim = 1;
  const std::size_t m = half.x.size();
  grid.nodes.resize(2 * m);
  grid.weights.resize(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    grid.nodes[i] = half.x[i];
    grid.weights[i] = half.w[i] / k_pi;
    // The mirror image of x is the projective point pi - x; storing it as -x
    // keeps spike offsets below the double spacing at pi exactly
    // representable (pi - x rounds to pi once x < 2^-51).
    grid.nodes[m + i] = -half.x[i];
    grid.weights[m + i] = half.w[i] / k_pi;
  }
  return grid;
}

QuadratureGrid so3_probability_grid(int points) {
  if (points < 2) throw std::invalid_argument("SO(3) grid needs at least two points per axis");
  std::vector<double> cx, cw;
  legendre_rule(points, cx, cw);
  QuadratureGrid grid;
  grid.kind = GridKind::so3_euler;
  grid.dim = 3;
  const std::size_t total = static_cast<std::size_t>(points) * points * points;
  grid.nodes.reserve(3 * total);
  grid.weights.reserve(total);
  for (int i = 0; i < points; ++i) {
    const double alpha = 2.0 * k_pi * (i + 0.5) / points;
    for (int j = 0; j < points; ++j) {
      const double beta = std::acos(cx[j]);
      const double wbeta = 0.5 * cw[j];
      for (int l = 0; l < points; ++l) {
        const double gamma = 2.0 * k_pi * (l + 0.5) / points;
        grid.nodes.push_back(alpha);
        grid.nodes.push_back(beta);
        grid.nodes.push_back(gamma);
        grid.weights.push_back(wbeta / (static_cast<double>(points) * points));
      }
    }
  }
  return grid;
}

Eigen::Matrix3d rotation_from_euler(double alpha, double beta, double gamma) {
  return (Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(gamma, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

QuadratureGrid so3_adapted_grid(const ChamberVector& H, double density, int n_outer) {
  require_sl3_chamber(H);
  if (density <= 0.0 || n_outer < 1)
    throw std::invalid_argument("adapted SO(3) grid needs positive density and point count");
  const double h1 = H.h[0], h2 = H.h[1], h3 = H.h[2];
  const double e2h[3] = {std::exp(2.0 * h1), std::exp(2.0 * h2), std::exp(2.0 * h3)};
  const double em2h[3] = {1.0 / e2h[0], 1.0 / e2h[1], 1.0 / e2h[2]};

  QuadratureGrid grid;
  grid.kind = GridKind::so3_matrix;
  grid.dim = 9;

  // Measure bookkeeping: Haar = (sin(Theta)/4pi) dTheta dPhi x (1/2pi) dgamma.
  // Phi is folded to [0, pi/2] (x4), Theta to [0, pi/2] (x2), gamma to
  // [0, pi/2] (x4); the folds are exact for integrands invariant under the
  // coordinate reflections diag(+-1) and k -> -k, which holds for the
  // spherical integrand of a diagonal group element exp(H).
  const double measure = 4.0 / (k_pi * k_pi);

  const Rule phi_rule = adapted_half_rule(std::exp(-(h2 - h3)), density, n_outer);
  for (std::size_t ip = 0; ip < phi_rule.x.size(); ++ip) {
    const double phi = phi_rule.x[ip], wphi = phi_rule.w[ip];
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double q = em2h[1] * cphi * cphi + em2h[2] * sphi * sphi;

    const Rule theta_rule =
        adapted_half_rule(std::exp(-h1) / std::sqrt(q), density, n_outer);
    for (std::size_t it = 0; it < theta_rule.x.size(); ++it) {
      const double theta = theta_rule.x[it], wtheta = theta_rule.w[it];
      const double ct = std::cos(theta), st = std::sin(theta);
      const Eigen::Vector3d n_vec(ct, st * cphi, st * sphi);
      // Orthonormal frame spanning the plane perpendicular to n_vec, with
      // a_vec x b_vec = n_vec.
      const Eigen::Vector3d a_vec(-st, ct * cphi, ct * sphi);
      const Eigen::Vector3d b_vec(0.0, -sphi, cphi);

      // Quadratic form |e^H u|^2 restricted to the (a, b) circle.
      const double caa = e2h[0] * a_vec[0] * a_vec[0] + e2h[1] * a_vec[1] * a_vec[1] +
                         e2h[2] * a_vec[2] * a_vec[2];
      const double cbb = e2h[0] * b_vec[0] * b_vec[0] + e2h[1] * b_vec[1] * b_vec[1] +
                         e2h[2] * b_vec[2] * b_vec[2];
      const double cab = e2h[0] * a_vec[0] * b_vec[0] + e2h[1] * a_vec[1] * b_vec[1] +
                         e2h[2] * a_vec[2] * b_vec[2];
      const double mean = 0.5 * (caa + cbb), diff = 0.5 * (caa - cbb);
      const double rad = std::hypot(diff, cab);
      const double lam1 = mean + rad;
      // lam1 * lam2 equals the determinant of the restricted form, which is
      // |e^{-H} n|^2 by the cofactor identity; the quotient form avoids the
      // cancellation in mean - rad when lam2 << lam1.
      const double norm_n2 =
          em2h[0] * ct * ct + q * st * st;
      const double lam2 = norm_n2 / lam1;
      const double psi = 0.5 * std::atan2(2.0 * cab, caa - cbb);
      const Eigen::Vector3d v1 = std::cos(psi) * a_vec + std::sin(psi) * b_vec;
      const Eigen::Vector3d v2 = -std::sin(psi) * a_vec + std::cos(psi) * b_vec;

      const Rule gamma_rule =
          adapted_half_rule(std::sqrt(std::max(lam2, 1e-300) / lam1), density, n_outer);
      for (std::size_t ig = 0; ig < gamma_rule.x.size(); ++ig) {
        const double g = gamma_rule.x[ig];
        // u at angle g from the small-eigenvalue axis of the circle form, so
        // gamma nodes cluster where |e^H u| dips.
        const Eigen::Vector3d u = std::cos(g) * v2 + std::sin(g) * v1;
        const Eigen::Vector3d m = n_vec.cross(u);
        grid.nodes.push_back(u[0]);
        grid.nodes.push_back(m[0]);
        grid.nodes.push_back(n_vec[0]);
        grid.nodes.push_back(u[1]);
        grid.nodes.push_back(m[1]);
        grid.nodes.push_back(n_vec[1]);
        grid.nodes.push_back(u[2]);
        grid.nodes.push_back(m[2]);
        grid.nodes.push_back(n_vec[2]);
        grid.weights.push_back(measure * wphi * wtheta * st * gamma_rule.w[ig]);
      }
    }
  }
  return grid;
}

QuadratureGrid chamber_grid(const RootDatum& datum, double radius, int points) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("chamber grid needs a positive finite radius");
  if (points < 1) throw std::invalid_argument("chamber grid needs at least one point per axis");

  QuadratureGrid grid;
  grid.kind = GridKind::chamber;
  grid.dim = datum.n;

  if (datum.n == 2) {
    // Ray {(s/2, -s/2) : s > 0} in simple-root coordinate s; |H| = kappa s
    // and the length element is kappa ds.
    const double kappa = datum.norm == NormKind::killing ? std::numbers::sqrt2
                                                         : 1.0 / std::numbers::sqrt2;
    const Rule rule = gauss_rule(points, 0.0, radius / kappa);
    grid.nodes.reserve(2 * points);
    grid.weights.reserve(points);
    for (int i = 0; i < points; ++i) {
      grid.nodes.push_back(0.5 * rule.x[i]);
      grid.nodes.push_back(-0.5 * rule.x[i]);
      grid.weights.push_back(kappa * rule.w[i]);
    }
    return grid;
  }

  if (datum.n == 3) {
    // Whitened simple-root plane: y = Q^{1/2} s with Q the simple-root Gram
    // matrix [[1, 1/2], [1/2, 1]]. The open chamber is the sector
    // (pi/12, 5pi/12) and |H| = kappa_r |y|, so the ball truncation is a
    // plain radial cutoff and Gauss rules in (r, phi) see smooth data.
    const double c_plus = 1.0 / std::sqrt(1.5), c_minus = 1.0 / std::sqrt(0.5);
    const double ci = 0.5 * (c_plus + c_minus);  // Q^{-1/2} = ci I + di swap
    const double di = 0.5 * (c_plus - c_minus);
    const bool killing = datum.norm == NormKind::killing;
    const double kappa_r = killing ? 2.0 : std::sqrt(2.0 / 3.0);
    const double area_jac = killing ? 4.0 : 2.0 / 3.0;  // dH = area_jac dy
    const Rule radial = gauss_rule(points, 0.0, radius / kappa_r);
    const Rule angular = gauss_rule(points, k_pi / 12.0, 5.0 * k_pi / 12.0);
    grid.nodes.reserve(3 * static_cast<std::size_t>(points) * points);
    grid.weights.reserve(static_cast<std::size_t>(points) * points);
    for (int i = 0; i < points; ++i) {
      const double r = radial.x[i];
      for (int j = 0; j < points; ++j) {
        const double y1 = r * std::cos(angular.x[j]);
        const double y2 = r * std::sin(angular.x[j]);
        const double s1 = ci * y1 + di * y2;
        const double s2 = di * y1 + ci * y2;
        grid.nodes.push_back((2.0 * s1 + s2) / 3.0);
        grid.nodes.push_back((s2 - s1) / 3.0);
        grid.nodes.push_back(-(s1 + 2.0 * s2) / 3.0);
        grid.weights.push_back(radial.w[i] * angular.w[j] * r * area_jac);
      }
    }
    return grid;
  }

  throw std::invalid_argument("chamber grid is implemented for SL(2,R) and SL(3,R) only");
}

}  // namespace rdcheck
