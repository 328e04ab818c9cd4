#include "rdcheck/boundary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdcheck {

namespace {

constexpr double k_pi = std::numbers::pi;

void require_sl2(const GroupElement& g) {
  if (g.n() != 2)
    throw std::invalid_argument("boundary action is defined for SL(2,R)");
}

double fold_angle(double a) {
  if (a < 0.0) a += k_pi;
  if (a >= k_pi) a -= k_pi;
  return a;
}

/// Angle and squared norm of M u_theta in one pass; the pair feeds both the
/// moved node and the cocycle value of the same group element.
struct MovedPoint {
  double angle;
  double inv_norm2;
};

MovedPoint move_point(const Eigen::Matrix2d& m, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double x = m(0, 0) * c + m(0, 1) * s;
  const double y = m(1, 0) * c + m(1, 1) * s;
  return MovedPoint{fold_angle(std::atan2(y, x)), 1.0 / (x * x + y * y)};
}

Eigen::Matrix2d inverse2(const Eigen::MatrixXd& m) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Eigen::Matrix2d inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

void require_same_grid(const BoundaryFunction& f, const BoundaryFunction& g) {
  if (f.grid.kind != g.grid.kind || f.grid.nodes != g.grid.nodes)
    throw std::invalid_argument("boundary functions live on different grids");
  if (f.values.size() != f.grid.size() || g.values.size() != g.grid.size())
    throw std::invalid_argument("boundary function values do not match the grid");
}

void require_uniform(const BoundaryFunction& f) {
  if (f.grid.kind != GridKind::boundary_uniform)
    throw std::invalid_argument(
        "operation requires the uniform boundary grid (band-limited interpolation)");
  if (f.values.size() != f.grid.size())
    throw std::invalid_argument("boundary function values do not match the grid");
}

void require_circle(const QuadratureGrid& k_grid) {
  if (k_grid.kind != GridKind::circle_uniform)
    throw std::invalid_argument("K-averaging requires a uniform circle grid");
}

}  // namespace

double act(const GroupElement& g, double theta) {
  require_sl2(g);
  const double c = std::cos(theta), s = std::sin(theta);
  return fold_angle(std::atan2(g.m(1, 0) * c + g.m(1, 1) * s,
                               g.m(0, 0) * c + g.m(0, 1) * s));
}

double cocycle(const GroupElement& g, double theta) {
  require_sl2(g);
  return move_point(inverse2(g.m), theta).inv_norm2;
}

double cocycle_iwasawa(const RootDatum& datum, const GroupElement& g,
                       const Eigen::MatrixXd& k) {
  if (k.rows() != datum.n || k.cols() != datum.n)
    throw std::invalid_argument("rotation has wrong dimension for the datum");
  const GroupElement moved = group_element(g.m.fullPivLu().solve(k));
  const IwasawaTriple iw = iwasawa_decompose(datum, moved);
  return std::exp(-2.0 * rho_value(datum, iw.H));
}

BoundaryFunction constant_function(const QuadratureGrid& grid, double value) {
  BoundaryFunction f;
  f.grid = grid;
  f.values.assign(grid.size(), value);
  return f;
}

double inner(const BoundaryFunction& f, const BoundaryFunction& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j)
    sum += f.grid.weights[j] * f.values[j] * g.values[j];
  return sum;
}

double norm(const BoundaryFunction& f) { return std::sqrt(inner(f, f)); }

TrigInterpolant::TrigInterpolant(const BoundaryFunction& f) {
  require_uniform(f);
  points_ = static_cast<int>(f.grid.size());
  const int half = points_ / 2;
  coeff_.assign(half, {0.0, 0.0});
  // c_m = (1/N) sum_j v_j e^{-2 i m theta_j}; the e^{-2 i m theta} factors
  // advance by multiplication so the build is one trig call per node.
  for (int j = 0; j < points_; ++j) {
    const double theta = f.grid.nodes[j];
    const std::complex<double> step(std::cos(2.0 * theta), -std::sin(2.0 * theta));
    std::complex<double> z(1.0, 0.0);
    const double v = f.values[j] / points_;
    for (int m = 0; m < half; ++m) {
      coeff_[m] += v * z;
      z *= step;
    }
    // The Nyquist mode sin(N theta) alternates as (-1)^j on midpoint nodes.
    nyquist_sine_ += (j % 2 == 0 ? v : -v);
  }
}

double TrigInterpolant::operator()(double theta) const {
  const std::complex<double> step(std::cos(2.0 * theta), std::sin(2.0 * theta));
  std::complex<double> z = step;
  double sum = coeff_[0].real();
  for (std::size_t m = 1; m < coeff_.size(); ++m) {
    sum += 2.0 * (coeff_[m].real() * z.real() - coeff_[m].imag() * z.imag());
    z *= step;
  }
  sum += nyquist_sine_ * std::sin(points_ * theta);
  return sum;
}

BoundaryFunction quasi_regular_apply(const GroupElement& g,
                                     const BoundaryFunction& xi) {
  require_sl2(g);
  require_uniform(xi);
  const TrigInterpolant interp(xi);
  const Eigen::Matrix2d ginv = inverse2(g.m);
  BoundaryFunction out;
  out.grid = xi.grid;
  out.values.resize(xi.values.size());
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    // One matrix apply yields both act(g^-1, theta) and c(g, theta).
    const MovedPoint p = move_point(ginv, xi.grid.nodes[j]);
    out.values[j] = std::sqrt(p.inv_norm2) * interp(p.angle);
  }
  return out;
}

BoundaryFunction k_average_f(const BoundaryFunction& xi,
                             const QuadratureGrid& k_grid) {
  require_uniform(xi);
  require_circle(k_grid);
  const TrigInterpolant interp(xi);
  BoundaryFunction out;
  out.grid = xi.grid;
  out.values.assign(xi.values.size(), 0.0);
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < k_grid.size(); ++k) {
      const double v = interp(xi.grid.nodes[j] - k_grid.nodes[k]);
      sum += k_grid.weights[k] * v * v;
    }
    out.values[j] = sum;
  }
  return out;
}

Eigen::MatrixXd k_average_F(const BoundaryFunction& xi,
                            const QuadratureGrid& k_grid) {
  require_uniform(xi);
  require_circle(k_grid);
  const TrigInterpolant interp(xi);
  const Eigen::Index n = static_cast<Eigen::Index>(xi.values.size());
  const Eigen::Index nk = static_cast<Eigen::Index>(k_grid.size());
  Eigen::MatrixXd t(n, nk);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < nk; ++k)
      t(j, k) = std::sqrt(k_grid.weights[k]) *
                interp(xi.grid.nodes[j] - k_grid.nodes[k]);
  return t * t.transpose();
}

}  // namespace rdcheck
