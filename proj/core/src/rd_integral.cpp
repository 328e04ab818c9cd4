#include "rdcheck/rd_integral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rdcheck {

namespace {

void require_rd_rank(const RootDatum& datum) {
  if (datum.n != 2 && datum.n != 3)
    throw std::invalid_argument(
        "rapid-decay integration is implemented for SL(2,R) and SL(3,R)");
}

void require_grids(const RDGrids& grids) {
  if (grids.chamber_points < 1 || grids.xi_density <= 0.0 || grids.xi_outer < 1)
    throw std::invalid_argument("rd grid parameters must be positive");
}

double xi_adapted(const RootDatum& datum, const ChamberVector& H,
                  const RDGrids& grids) {
  if (datum.n == 2)
    return xi_boundary(datum, H,
                       adapted_boundary_grid(H.h[0], grids.xi_density, grids.xi_outer));
  return xi_so3_adapted(datum, H, grids.xi_density, grids.xi_outer);
}

struct ChamberPass {
  double estimate = 0.0;
  double best_ratio = 0.0;
  std::size_t nodes = 0;
};

/// One sweep over the chamber ball: accumulates the integral and the largest
/// envelope ratio, reusing the single Xi evaluation per node for both.
ChamberPass sweep(const RootDatum& datum, double d, double radius,
                  const RDGrids& grids) {
  const QuadratureGrid chamber = chamber_grid(datum, radius, grids.chamber_points);
  ChamberPass pass;
  pass.nodes = chamber.size();
  for (std::size_t i = 0; i < chamber.size(); ++i) {
    const double* node = chamber.node(i);
    ChamberVector H = make_chamber_vector(
        datum, std::vector<double>(node, node + chamber.dim));
    const double xi = xi_adapted(datum, H, grids);
    const double nrm = killing_norm(datum, H);
    pass.estimate += chamber.weights[i] * xi * xi *
                     std::pow(1.0 + nrm, -d) * jacobian(datum, H);
    const double ratio =
        xi * std::exp(rho_value(datum, H)) / std::pow(1.0 + nrm, datum.r);
    if (ratio > pass.best_ratio) pass.best_ratio = ratio;
  }
  return pass;
}

}  // namespace

RDGrids RDGrids::defaults_for(const RootDatum& datum) {
  require_rd_rank(datum);
  if (datum.n == 2) return RDGrids{96, 6.0, 32};
  return RDGrids{32, 4.0, 24};
}

RDGrids RDGrids::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("grid scale factor must be positive");
  RDGrids out;
  out.chamber_points = static_cast<int>(std::ceil(chamber_points * factor));
  out.xi_density = xi_density * factor;
  out.xi_outer = static_cast<int>(std::ceil(xi_outer * factor));
  return out;
}

double rd_integrand(const RootDatum& datum, const ChamberVector& H, double d,
                    const RDGrids& grids) {
  require_rd_rank(datum);
  require_grids(grids);
  if (!std::isfinite(d)) throw std::invalid_argument("exponent d must be finite");
  if (!H.chamber)
    throw std::domain_error("rd integrand requires the closed positive chamber");
  const double xi = xi_adapted(datum, H, grids);
  return xi * xi * std::pow(1.0 + killing_norm(datum, H), -d) *
         jacobian(datum, H);
}

TailBound tail_bound(const RootDatum& datum, double d, double radius, double c) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("tail bound needs a positive finite radius");
  if (!std::isfinite(d) || !(c >= 0.0))
    throw std::invalid_argument("tail bound needs finite d and c >= 0");
  const double m = datum.cartan_dim;
  const double gap = d - 2.0 * datum.r - m;
  TailBound tail;
  if (!(gap > 0.0)) {
    tail.finite = false;
    tail.value = std::numeric_limits<double>::infinity();
    return tail;
  }
  const double omega =
      2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
  tail.finite = true;
  tail.value = c * c * omega * std::pow(radius, -gap) / gap;
  return tail;
}

RDReport rd_constant(const RootDatum& datum, double d, double radius,
                     const RDGrids& grids) {
  require_rd_rank(datum);
  require_grids(grids);
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("rd constant needs a positive finite radius");
  if (!std::isfinite(d)) throw std::invalid_argument("exponent d must be finite");

  RDReport report;
  report.n = datum.n;
  report.d = d;
  report.radius = radius;
  report.grids = grids;
  report.divergent_tail = !(d > rd_threshold(datum));
  report.doubling_radii = {0.25 * radius, 0.5 * radius, radius};

  for (double rk : report.doubling_radii) {
    const ChamberPass pass = sweep(datum, d, rk, grids);
    report.doubling_estimates.push_back(pass.estimate);
    if (rk == radius) {
      report.estimate = pass.estimate;
      report.c_est = pass.best_ratio;
      report.chamber_nodes = pass.nodes;
    }
  }
  report.c_certified = 2.0 * report.c_est;
  report.tail = tail_bound(datum, d, radius, report.c_certified);

  const double step1 =
      std::abs(report.doubling_estimates[1] - report.doubling_estimates[0]);
  const double step2 =
      std::abs(report.doubling_estimates[2] - report.doubling_estimates[1]);
  report.converged =
      report.tail.finite && report.tail.value <= 0.05 * report.estimate &&
      step1 <= tail_bound(datum, d, 0.25 * radius, report.c_certified).value &&
      step2 <= tail_bound(datum, d, 0.5 * radius, report.c_certified).value;
  return report;
}

std::vector<RadiusEstimate> divergence_scan(const RootDatum& datum, double d,
                                            const std::vector<double>& radii,
                                            const RDGrids& grids) {
  require_rd_rank(datum);
  require_grids(grids);
  if (radii.empty()) throw std::invalid_argument("divergence scan needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw std::invalid_argument("divergence scan radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("divergence scan radii must increase");
  }
  std::vector<RadiusEstimate> out;
  out.reserve(radii.size());
  for (double rk : radii)
    out.push_back(RadiusEstimate{rk, sweep(datum, d, rk, grids).estimate});
  return out;
}

}  // namespace rdcheck
