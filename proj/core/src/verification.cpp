#include "rdcheck/verification.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rdcheck {

namespace {

constexpr double k_pi = std::numbers::pi;
using Complex = std::complex<double>;

void require_uniform_boundary(const BoundaryFunction& f) {
  if (f.grid.kind != GridKind::boundary_uniform)
    throw std::invalid_argument("verification requires the uniform boundary grid");
  if (f.values.size() != f.grid.size())
    throw std::invalid_argument("boundary function values do not match the grid");
}

void require_circle(const QuadratureGrid& k_grid) {
  if (k_grid.kind != GridKind::circle_uniform)
    throw std::invalid_argument("verification requires a uniform circle K-grid");
}

double fold_angle(double a) {
  if (a < 0.0) a += k_pi;
  if (a >= k_pi) a -= k_pi;
  return a;
}

/// Modes 0..band of a sampled function, the band cut where coefficients
/// drop to roundoff relative to the largest one. Exact (no cut) for inputs
/// assembled from trigonometric polynomials.
std::vector<Complex> modes_of(const BoundaryFunction& f) {
  const TrigInterpolant interp(f);
  double top = 0.0;
  for (int m = 0; m <= interp.modes(); ++m)
    top = std::max(top, std::abs(interp.coefficient(m)));
  int band = 0;
  for (int m = interp.modes(); m >= 1; --m)
    if (std::abs(interp.coefficient(m)) > 1e-13 * top) {
      band = m;
      break;
    }
  std::vector<Complex> c(band + 1);
  for (int m = 0; m <= band; ++m) c[m] = interp.coefficient(m);
  return c;
}

/// E(i, m-1) = e^{2 i m x_i} for m = 1..band.
Eigen::MatrixXcd phase_table(const std::vector<double>& x, int band) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(x.size()), band);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Complex z(std::cos(2.0 * x[i]), std::sin(2.0 * x[i]));
    Complex p = z;
    for (int m = 1; m <= band; ++m) {
      e(static_cast<Eigen::Index>(i), m - 1) = p;
      p *= z;
    }
  }
  return e;
}

/// Table of translates xi(x_i - phi_k) from the mode vector: size(x) rows,
/// K columns. Exact for the band-limited interpolant.
Eigen::MatrixXd translate_table(const std::vector<Complex>& modes,
                                const std::vector<double>& x,
                                const QuadratureGrid& k_grid) {
  const int band = static_cast<int>(modes.size()) - 1;
  const Eigen::Index rows = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(k_grid.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Constant(rows, cols, modes[0].real());
  if (band == 0) return t;
  Eigen::MatrixXcd e = phase_table(x, band);
  for (int m = 1; m <= band; ++m) e.col(m - 1) *= modes[m];
  std::vector<double> neg_phi(k_grid.size());
  for (std::size_t k = 0; k < k_grid.size(); ++k) neg_phi[k] = -k_grid.nodes[k];
  const Eigen::MatrixXcd w = phase_table(neg_phi, band);
  t.noalias() += 2.0 * (e * w.transpose()).real();
  return t;
}

/// Per-node data of the diagonal element exp(H), H = (t, -t):
/// sqrt of the cocycle and the pulled-back node act(exp(-H), theta_i).
struct DiagonalData {
  std::vector<double> sqrt_c;
  std::vector<double> moved;
};

DiagonalData diagonal_data(const QuadratureGrid& grid, double t) {
  const double ep = std::exp(t), em = std::exp(-t);
  DiagonalData data;
  data.sqrt_c.resize(grid.size());
  data.moved.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = std::cos(grid.nodes[i]), s = std::sin(grid.nodes[i]);
    data.sqrt_c[i] = 1.0 / std::sqrt(em * em * c * c + ep * ep * s * s);
    data.moved[i] = fold_angle(std::atan2(ep * s, em * c));
  }
  return data;
}

/// <sigma(exp H) F, F> for F the K-average of xi, through the exact K-sum
/// factorization ||T'^T diag(w_i sqrt(c_i)) T||_F^2 where T and T' tabulate
/// sqrt(w_k)-scaled translates at the grid nodes and the pulled-back nodes.
double sigma_pairing_ksum(const std::vector<Complex>& modes,
                          const QuadratureGrid& grid,
                          const QuadratureGrid& k_grid, double t,
                          const Eigen::MatrixXd& t_base) {
  const DiagonalData data = diagonal_data(grid, t);
  Eigen::MatrixXd t_moved = translate_table(modes, data.moved, k_grid);
  for (Eigen::Index k = 0; k < t_moved.cols(); ++k)
    t_moved.col(k) *= std::sqrt(k_grid.weights[k]);
  Eigen::VectorXd diag(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    diag[i] = grid.weights[i] * data.sqrt_c[i];
  const Eigen::MatrixXd m = t_moved.transpose() * diag.asDiagonal() * t_base;
  return m.squaredNorm();
}

Eigen::MatrixXd weighted_translates(const std::vector<Complex>& modes,
                                    const QuadratureGrid& grid,
                                    const QuadratureGrid& k_grid) {
  std::vector<double> nodes(grid.nodes.begin(), grid.nodes.end());
  Eigen::MatrixXd t = translate_table(modes, nodes, k_grid);
  for (Eigen::Index k = 0; k < t.cols(); ++k)
    t.col(k) *= std::sqrt(k_grid.weights[k]);
  return t;
}

}  // namespace

BoundaryFunction random_positive_unit(std::mt19937_64& rng, int bandwidth,
                                      const QuadratureGrid& grid) {
  if (grid.kind != GridKind::boundary_uniform)
    throw std::invalid_argument("random test vectors live on the uniform boundary grid");
  if (bandwidth < 1 || 4 * bandwidth >= static_cast<int>(grid.size()))
    throw std::invalid_argument("bandwidth incompatible with the grid");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> a(bandwidth + 1), b(bandwidth + 1);
  for (int r = 0; r <= bandwidth; ++r) {
    a[r] = gauss(rng);
    b[r] = r == 0 ? 0.0 : gauss(rng);
  }
  BoundaryFunction xi;
  xi.grid = grid;
  xi.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double theta = grid.nodes[j];
    double p = a[0];
    for (int r = 1; r <= bandwidth; ++r)
      p += a[r] * std::cos(2.0 * r * theta) + b[r] * std::sin(2.0 * r * theta);
    xi.values[j] = p * p + 1e-3;
  }
  const double scale = 1.0 / norm(xi);
  for (double& v : xi.values) v *= scale;
  return xi;
}

Eigen::MatrixXd sigma_apply(const GroupElement& g, const QuadratureGrid& grid,
                            const Eigen::MatrixXd& f) {
  if (grid.kind != GridKind::boundary_uniform)
    throw std::invalid_argument("sigma_apply requires the uniform boundary grid");
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (f.rows() != n || f.cols() != n)
    throw std::invalid_argument("kernel does not match the product grid");
  const int half = static_cast<int>(n) / 2 - 1;

  // Mode matrix of the kernel, modes |m| <= half per axis; columns of phi
  // are orthogonal over the midpoint nodes, so this is the exact coefficient
  // array for band-limited kernels and the L^2 projection otherwise.
  Eigen::MatrixXcd phi(n, 2 * half + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex z(std::cos(2.0 * grid.nodes[j]), std::sin(2.0 * grid.nodes[j]));
    Complex p(1.0, 0.0);
    phi(j, half) = p;
    for (int m = 1; m <= half; ++m) {
      p *= z;
      phi(j, half + m) = p;
      phi(j, half - m) = std::conj(p);
    }
  }
  const Eigen::MatrixXcd coeff =
      (phi.adjoint() * f * phi.conjugate()) / static_cast<double>(n * n);

  const GroupElement ginv = group_element(g.m.inverse());
  std::vector<double> sqrt_c(grid.size());
  std::vector<double> moved(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sqrt_c[i] = std::sqrt(cocycle(g, grid.nodes[i]));
    moved[i] = act(ginv, grid.nodes[i]);
  }

  Eigen::MatrixXcd psi(n, 2 * half + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex z(std::cos(2.0 * moved[i]), std::sin(2.0 * moved[i]));
    Complex p(1.0, 0.0);
    psi(i, half) = p;
    for (int m = 1; m <= half; ++m) {
      p *= z;
      psi(i, half + m) = p;
      psi(i, half - m) = std::conj(p);
    }
  }
  Eigen::MatrixXd out = (psi * coeff * psi.transpose()).real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) *= sqrt_c[i] * sqrt_c[j];
  return out;
}

double product_pairing(const QuadratureGrid& grid, const Eigen::MatrixXd& a,
                       const Eigen::MatrixXd& b) {
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("kernels do not match the product grid");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      sum += grid.weights[i] * grid.weights[j] * a(i, j) * b(i, j);
  return sum;
}

double linearization_gap(const GroupElement& g, const BoundaryFunction& xi) {
  require_uniform_boundary(xi);
  const BoundaryFunction moved = quasi_regular_apply(g, xi);
  const double p = inner(moved, xi);
  const Eigen::Map<const Eigen::VectorXd> v(xi.values.data(),
                                            static_cast<Eigen::Index>(xi.values.size()));
  const Eigen::MatrixXd f = v * v.transpose();
  const double rhs = product_pairing(xi.grid, sigma_apply(g, xi.grid, f), f);
  return std::abs(p * p - rhs);
}

std::vector<DominationSample> domination_profile(const BoundaryFunction& xi,
                                                 const QuadratureGrid& k_grid,
                                                 const std::vector<double>& t_values) {
  require_uniform_boundary(xi);
  require_circle(k_grid);
  const std::vector<Complex> modes = modes_of(xi);
  const Eigen::MatrixXd t_base = weighted_translates(modes, xi.grid, k_grid);
  std::vector<DominationSample> out;
  out.reserve(t_values.size());
  for (double t : t_values) {
    if (!(t >= 0.0)) throw std::invalid_argument("domination needs t >= 0");
    const DiagonalData data = diagonal_data(xi.grid, t);
    double xi_disc = 0.0;
    for (std::size_t i = 0; i < xi.grid.size(); ++i)
      xi_disc += xi.grid.weights[i] * data.sqrt_c[i];
    DominationSample sample;
    sample.t = t;
    sample.xi_sq = xi_disc * xi_disc;
    sample.pairing = sigma_pairing_ksum(modes, xi.grid, k_grid, t, t_base);
    sample.margin = sample.xi_sq - sample.pairing;
    out.push_back(sample);
  }
  return out;
}

CauchySchwarzStat cauchy_schwarz_chain_check(const BoundaryFunction& xi,
                                             const QuadratureGrid& k_grid,
                                             double tol) {
  require_uniform_boundary(xi);
  require_circle(k_grid);
  const std::vector<Complex> modes = modes_of(xi);
  const Eigen::MatrixXd t = weighted_translates(modes, xi.grid, k_grid);
  const Eigen::Index n = t.rows();
  Eigen::VectorXd f(n);
  for (Eigen::Index i = 0; i < n; ++i) f[i] = t.row(i).squaredNorm();
  const Eigen::MatrixXd big_f = t * t.transpose();
  const double norm2 = inner(xi, xi);

  CauchySchwarzStat stat;
  for (Eigen::Index i = 0; i < n; ++i) {
    stat.f_spread = std::max(stat.f_spread, std::abs(f[i] - norm2));
    if (std::abs(f[i] - norm2) > tol) ++stat.violations;
  }
  const double entry_bound = norm2 + tol;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double bound = std::sqrt(f[i] * f[j]);
      const double gap = big_f(i, j) - bound;
      if (gap > stat.worst_gap) stat.worst_gap = gap;
      if (gap > tol) ++stat.violations;
      if (big_f(i, j) > entry_bound) ++stat.violations;
      if (big_f(i, j) > stat.max_entry) stat.max_entry = big_f(i, j);
    }
  return stat;
}

MasterStat rd_master_check(const RootDatum& datum, const BoundaryFunction& xi,
                           const QuadratureGrid& k_grid, double d, double radius,
                           int chamber_points, const RDReport& report, double tol) {
  if (datum.n != 2)
    throw std::invalid_argument("the master check runs over SL(2,R)");
  require_uniform_boundary(xi);
  require_circle(k_grid);
  const int n_pts = static_cast<int>(xi.grid.size());
  const int k_pts = static_cast<int>(k_grid.size());
  if (n_pts % k_pts != 0)
    throw std::invalid_argument(
        "boundary and K grids must be commensurate (K size divides boundary size)");
  const int q = n_pts / k_pts;

  const std::vector<Complex> modes = modes_of(xi);
  const int band = static_cast<int>(modes.size()) - 1;
  std::vector<double> neg_phi(k_grid.size());
  for (std::size_t k = 0; k < k_grid.size(); ++k) neg_phi[k] = -k_grid.nodes[k];
  const Eigen::MatrixXcd w_table = phase_table(neg_phi, band);  // e^{-2 i m phi_k}

  const QuadratureGrid chamber = chamber_grid(datum, radius, chamber_points);
  const double k_weight = 1.0 / (static_cast<double>(k_pts) * k_pts);

  double lhs = 0.0;
  for (std::size_t ci = 0; ci < chamber.size(); ++ci) {
    const double t = chamber.node(ci)[0];
    ChamberVector h = make_chamber_vector(datum, {t, -t});
    const double cw = chamber.weights[ci] *
                      std::pow(1.0 + killing_norm(datum, h), -d) *
                      jacobian(datum, h);
    const DiagonalData data = diagonal_data(xi.grid, t);
    std::vector<double> a(xi.grid.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = xi.grid.weights[i] * data.sqrt_c[i];
    const Eigen::MatrixXcd ey = phase_table(data.moved, band);

    // Rotating by a K-node shifts the boundary grid by q(2l+1) slots, so
    // <lambda(k1 exp(H) k2) xi, xi> reduces to mode sums over exact samples.
    double p2 = 0.0;
    Eigen::VectorXcd b(static_cast<Eigen::Index>(a.size()));
    for (int l = 0; l < k_pts; ++l) {
      const int shift = (q * (2 * l + 1)) % (2 * n_pts);
      for (std::size_t j = 0; j < a.size(); ++j)
        b[static_cast<Eigen::Index>(j)] =
            a[j] * xi.values[(j + shift) % a.size()];
      const Complex u0 = b.sum();
      Eigen::VectorXcd u = ey.transpose() * b;
      for (int m = 1; m <= band; ++m) u[m - 1] *= modes[m];
      const Eigen::VectorXcd pk = w_table * u;
      for (int k = 0; k < k_pts; ++k) {
        const double p = modes[0].real() * u0.real() + 2.0 * pk[k].real();
        p2 += p * p;
      }
    }
    lhs += cw * k_weight * p2;
  }

  MasterStat stat;
  stat.lhs = lhs;
  stat.constant = report.estimate;
  stat.margin = stat.constant - stat.lhs;
  stat.pass = lhs <= stat.constant + tol * (1.0 + std::abs(stat.constant));
  return stat;
}

VerificationRun run_verification(const VerificationConfig& config) {
  if (config.boundary_points < 4 || config.boundary_points % 2 != 0)
    throw std::invalid_argument("boundary_points must be even and at least 4");
  if (config.k_points < 2 || config.boundary_points % config.k_points != 0)
    throw std::invalid_argument("k_points must divide boundary_points");
  // Test vectors have bandwidth 2 * bandwidth and squares 4 * bandwidth;
  // the K-average is constant only when no nonzero square mode is a
  // multiple of k_points / 2.
  if (config.bandwidth < 1 || 8 * config.bandwidth >= config.k_points)
    throw std::invalid_argument("need 8 * bandwidth < k_points");
  if (2 * config.bandwidth >= config.boundary_points / 2)
    throw std::invalid_argument("bandwidth too large for the boundary grid");
  if (config.trials < 1 || config.chamber_points < 1)
    throw std::invalid_argument("trials and chamber_points must be positive");
  if (!(config.d > 0.0) || !(config.radius > 0.0) || !(config.tol > 0.0))
    throw std::invalid_argument("d, radius, and tol must be positive");

  const double scale = config.tol / 1e-8;
  const double lin_tol = 1e-9 * scale;
  const double dom_tol = 1e-12 * scale;
  const double cs_tol = config.tol;
  const double master_tol = 1e-9 * scale;

  const RootDatum datum = build_root_datum(2, config.norm);
  const QuadratureGrid bgrid = boundary_grid(config.boundary_points);
  const QuadratureGrid kgrid = circle_probability_grid(config.k_points);

  VerificationRun run;
  run.config = config;
  run.constant_report =
      rd_constant(datum, config.d, config.radius, RDGrids::defaults_for(datum));

  std::vector<double> t_values;
  for (int i = 1; i <= 10; ++i) t_values.push_back(0.5 * i);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * k_pi);
  // |H| = 2 sqrt(2) t in the Killing norm, so t <= 5 / (2 sqrt(2)) keeps
  // the random elements within length 5.
  std::uniform_real_distribution<double> tdist(0.0, 5.0 / (2.0 * std::numbers::sqrt2));

  run.domination.worst = std::numeric_limits<double>::infinity();
  run.master.worst = std::numeric_limits<double>::infinity();
  run.master_margin_min = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < config.trials; ++trial) {
    const BoundaryFunction xi = random_positive_unit(rng, config.bandwidth, bgrid);
    const double t = tdist(rng);
    const double phi1 = angle(rng), phi2 = angle(rng);
    Eigen::Matrix2d rot1, rot2, diag;
    rot1 << std::cos(phi1), -std::sin(phi1), std::sin(phi1), std::cos(phi1);
    rot2 << std::cos(phi2), -std::sin(phi2), std::sin(phi2), std::cos(phi2);
    diag << std::exp(t), 0.0, 0.0, std::exp(-t);
    const GroupElement g = group_element(rot1 * diag * rot2);

    const double gap = linearization_gap(g, xi);
    if (gap > lin_tol) ++run.linearization.violations;
    run.linearization.worst = std::max(run.linearization.worst, gap);

    for (const DominationSample& s : domination_profile(xi, kgrid, t_values)) {
      if (s.margin < -dom_tol) ++run.domination.violations;
      run.domination.worst = std::min(run.domination.worst, s.margin);
    }

    const CauchySchwarzStat cs = cauchy_schwarz_chain_check(xi, kgrid, cs_tol);
    run.cauchy_schwarz.violations += cs.violations;
    run.cauchy_schwarz.worst = std::max(run.cauchy_schwarz.worst, cs.worst_gap);

    const MasterStat master =
        rd_master_check(datum, xi, kgrid, config.d, config.radius,
                        config.chamber_points, run.constant_report, master_tol);
    if (!master.pass) ++run.master.violations;
    run.master.worst = std::min(run.master.worst, master.margin);
    run.master_lhs_worst = std::max(run.master_lhs_worst, master.lhs);
    run.master_margin_min = std::min(run.master_margin_min, master.margin);
  }

  run.pass = run.linearization.violations == 0 && run.domination.violations == 0 &&
             run.cauchy_schwarz.violations == 0 && run.master.violations == 0;
  return run;
}

}  // namespace rdcheck
