#include "rdcheck/spherical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdcheck {

namespace {

/// e^{-rho(H_iw(M))} for M in SL(3,R) from the Gram data of the first two
/// columns: with QR column norms r11, r22 one has rho(H_iw(M)) =
/// log(r11^2 r22) and r11 r22 = |c1 x c2|. Cross-checked against the full
/// Iwasawa factorization in the test suite.
double sl3_iwasawa_kernel(const Eigen::Matrix3d& m) {
  const Eigen::Vector3d c1 = m.col(0);
  const Eigen::Vector3d c2 = m.col(1);
  return 1.0 / (c1.norm() * c1.cross(c2).norm());
}

/// Arithmetic-geometric mean of a, b > 0. Quadratic convergence; the 48
/// iteration cap is never reached in double precision.
double agm(double a, double b) {
  for (int iter = 0; iter < 48 && std::abs(a - b) > 1e-17 * a; ++iter) {
    const double mid = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

double xi_boundary(const RootDatum& datum, const ChamberVector& H,
                   const QuadratureGrid& grid) {
  if (datum.n != 2)
    throw std::invalid_argument("xi_boundary is the SL(2,R) route");
  if (H.h.size() != 2)
    throw std::invalid_argument("Cartan vector has wrong dimension");
  if (!H.chamber)
    throw std::domain_error("xi_boundary requires the closed positive chamber");
  if (grid.kind != GridKind::boundary_uniform &&
      grid.kind != GridKind::boundary_adapted)
    throw std::invalid_argument("xi_boundary requires a boundary grid");
  const double emt = std::exp(-2.0 * H.h[0]);  // e^{-2t}
  const double ept = std::exp(2.0 * H.h[0]);
  double sum = 0.0;
  // c(exp H, theta)^{1/2} = (e^{-2t} cos^2 + e^{2t} sin^2)^{-1/2}
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double c = std::cos(grid.nodes[j]);
    const double s = std::sin(grid.nodes[j]);
    sum += grid.weights[j] / std::sqrt(emt * c * c + ept * s * s);
  }
  return sum;
}

double xi_iwasawa(const RootDatum& datum, const GroupElement& g,
                  const QuadratureGrid& k_grid) {
  if (g.n() != datum.n)
    throw std::invalid_argument("group element dimension does not match the datum");
  if (datum.n == 2) {
    if (k_grid.kind != GridKind::circle_uniform)
      throw std::invalid_argument("xi_iwasawa for SL(2,R) requires a circle K-grid");
    // e^{-rho(H_iw(g k_phi))} = 1 / |g u_phi|
    double sum = 0.0;
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      const double c = std::cos(k_grid.nodes[j]);
      const double s = std::sin(k_grid.nodes[j]);
      const double x = g.m(0, 0) * c + g.m(0, 1) * s;
      const double y = g.m(1, 0) * c + g.m(1, 1) * s;
      sum += k_grid.weights[j] / std::hypot(x, y);
    }
    return sum;
  }
  if (datum.n == 3) {
    const Eigen::Matrix3d gm = g.m;
    double sum = 0.0;
    if (k_grid.kind == GridKind::so3_euler) {
      for (std::size_t j = 0; j < k_grid.size(); ++j) {
        const double* node = k_grid.node(j);
        const Eigen::Matrix3d k = rotation_from_euler(node[0], node[1], node[2]);
        sum += k_grid.weights[j] * sl3_iwasawa_kernel(gm * k);
      }
      return sum;
    }
    if (k_grid.kind == GridKind::so3_matrix) {
      for (std::size_t j = 0; j < k_grid.size(); ++j) {
        const Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> k(
            k_grid.node(j));
        sum += k_grid.weights[j] * sl3_iwasawa_kernel(gm * k);
      }
      return sum;
    }
    throw std::invalid_argument("xi_iwasawa for SL(3,R) requires an SO(3) K-grid");
  }
  throw std::invalid_argument("xi_iwasawa supports SL(2,R) and SL(3,R)");
}

double xi_so3_adapted(const RootDatum& datum, const ChamberVector& H,
                      double density, int n_outer) {
  if (datum.n != 3)
    throw std::invalid_argument("the adapted SO(3) evaluation is the SL(3,R) route");
  if (H.h.size() != 3)
    throw std::invalid_argument("Cartan vector has wrong dimension");
  if (!H.chamber)
    throw std::domain_error("xi_so3_adapted requires the closed positive chamber");
  const double h1 = H.h[0], h2 = H.h[1], h3 = H.h[2];
  const double e2h[3] = {std::exp(2.0 * h1), std::exp(2.0 * h2), std::exp(2.0 * h3)};
  const double em2h[3] = {1.0 / e2h[0], 1.0 / e2h[1], 1.0 / e2h[2]};

  // Haar in sphere coordinates: (sin(Theta)/4pi) dTheta dPhi x circle mean
  // over u. Phi and Theta fold to [0, pi/2] (x4 and x2) by the reflection
  // symmetries of the diagonal integrand, leaving the prefactor 2/pi.
  const QuadratureGrid phi_rule =
      adapted_interval_rule(std::exp(-(h2 - h3)), density, n_outer);
  double total = 0.0;
  for (std::size_t ip = 0; ip < phi_rule.size(); ++ip) {
    const double phi = phi_rule.nodes[ip], wphi = phi_rule.weights[ip];
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double q = em2h[1] * cphi * cphi + em2h[2] * sphi * sphi;

    const QuadratureGrid theta_rule =
        adapted_interval_rule(std::exp(-h1) / std::sqrt(q), density, n_outer);
    double slice = 0.0;
    for (std::size_t it = 0; it < theta_rule.size(); ++it) {
      const double theta = theta_rule.nodes[it], wtheta = theta_rule.weights[it];
      const double ct = std::cos(theta), st = std::sin(theta);
      // n = k e3 = (cos Theta, sin Theta cos Phi, sin Theta sin Phi); the
      // frame (a, b) spans the perpendicular circle carrying u = k e1.
      const double a_vec[3] = {-st, ct * cphi, ct * sphi};
      const double b_vec[3] = {0.0, -sphi, cphi};
      const double caa =
          e2h[0] * a_vec[0] * a_vec[0] + e2h[1] * a_vec[1] * a_vec[1] + e2h[2] * a_vec[2] * a_vec[2];
      const double cbb = e2h[1] * b_vec[1] * b_vec[1] + e2h[2] * b_vec[2] * b_vec[2];
      const double cab = e2h[1] * a_vec[1] * b_vec[1] + e2h[2] * a_vec[2] * b_vec[2];
      const double mean = 0.5 * (caa + cbb), diff = 0.5 * (caa - cbb);
      const double lam1 = mean + std::hypot(diff, cab);
      // lam1 * lam2 = |exp(-H) n|^2 by the cofactor identity; dividing keeps
      // lam2 accurate where mean - rad would cancel.
      const double norm_n2 = em2h[0] * ct * ct + q * st * st;
      const double lam2 = norm_n2 / lam1;
      // Circle mean of |exp(H) u|^{-1} in closed form (Gauss):
      //   (1/2pi) int (lam1 cos^2 + lam2 sin^2)^{-1/2} = 1/agm(sqrt lam1, sqrt lam2).
      slice += wtheta * st /
               (std::sqrt(norm_n2) * agm(std::sqrt(lam1), std::sqrt(lam2)));
    }
    total += wphi * slice;
  }
  return total * (2.0 / std::numbers::pi);
}

std::vector<XiSample> sample_spherical_ray(const RootDatum& datum, double t_max,
                                           int count) {
  if (!(t_max > 0.0) || count < 1)
    throw std::invalid_argument("ray sampling needs t_max > 0 and count >= 1");
  if (datum.n != 2 && datum.n != 3)
    throw std::invalid_argument("ray sampling supports SL(2,R) and SL(3,R)");
  std::vector<XiSample> samples;
  samples.reserve(count + 1);
  for (int i = 0; i <= count; ++i) {
    const double t = t_max * i / count;
    ChamberVector H = datum.n == 2
                          ? make_chamber_vector(datum, {t, -t})
                          : make_chamber_vector(datum, {t, 0.0, -t});
    double xi;
    if (datum.n == 2) {
      xi = xi_boundary(datum, H, adapted_boundary_grid(t));
    } else {
      xi = xi_so3_adapted(datum, H);
    }
    XiSample s;
    s.t = t;
    s.xi = xi;
    s.envelope_ratio = xi * std::exp(rho_value(datum, H)) /
                       std::pow(1.0 + killing_norm(datum, H), datum.r);
    samples.push_back(s);
  }
  return samples;
}

EnvelopeFit decay_envelope_fit(const std::vector<XiSample>& samples) {
  if (samples.empty())
    throw std::invalid_argument("envelope fit needs at least one sample");
  EnvelopeFit fit;
  for (const XiSample& s : samples)
    fit.c_est = std::max(fit.c_est, s.envelope_ratio);
  fit.c_certified = 2.0 * fit.c_est;
  return fit;
}

}  // namespace rdcheck
