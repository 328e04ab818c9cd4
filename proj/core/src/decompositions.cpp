#include "rdcheck/decompositions.hpp"

#include <cmath>
#include <stdexcept>

namespace rdcheck {

namespace {

constexpr double k_det_tol = 1e-9;

ChamberVector chamber_from_log_singular(const RootDatum& datum,
                                        const Eigen::VectorXd& sigma) {
  std::vector<double> h(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (!(sigma[i] > 0.0) || !std::isfinite(sigma[i]))
      throw std::runtime_error("singular value spectrum degenerated");
    h[i] = std::log(sigma[i]);
  }
  // log det = 0 up to roundoff for a determinant-one input; recenter the
  // accumulated rounding so the chamber-vector validation stays exact.
  double mean = 0.0;
  for (double v : h) mean += v;
  mean /= static_cast<double>(h.size());
  for (double& v : h) v -= mean;
  return make_chamber_vector(datum, std::move(h));
}

}  // namespace

GroupElement group_element(Eigen::MatrixXd m) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw std::invalid_argument("group element must be a square matrix, n >= 2");
  if (!m.allFinite())
    throw std::invalid_argument("group element must have finite entries");
  const double det = m.determinant();
  if (!(std::abs(det - 1.0) <= k_det_tol))
    throw std::invalid_argument("matrix is not unimodular: det = " +
                                std::to_string(det));
  return GroupElement{std::move(m)};
}

GroupElement exp_cartan(const RootDatum& datum, const ChamberVector& H) {
  if (static_cast<int>(H.h.size()) != datum.n)
    throw std::invalid_argument("Cartan vector has wrong dimension");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(datum.n, datum.n);
  for (int i = 0; i < datum.n; ++i) m(i, i) = std::exp(H.h[i]);
  return GroupElement{std::move(m)};
}

PolarTriple cartan_decompose(const RootDatum& datum, const GroupElement& g) {
  if (g.n() != datum.n)
    throw std::invalid_argument("group element dimension does not match the datum");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.m,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  // det g = +1 forces det U = det V; flipping the last column of both leaves
  // U S V^T unchanged and lands both factors in SO(n).
  if (u.determinant() < 0.0) {
    u.col(datum.n - 1) *= -1.0;
    v.col(datum.n - 1) *= -1.0;
  }
  PolarTriple triple;
  triple.k1 = std::move(u);
  triple.H = chamber_from_log_singular(datum, svd.singularValues());
  triple.k2 = v.transpose();
  return triple;
}

IwasawaTriple iwasawa_decompose(const RootDatum& datum, const GroupElement& g) {
  if (g.n() != datum.n)
    throw std::invalid_argument("group element dimension does not match the datum");
  const int n = datum.n;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.m);
  Eigen::MatrixXd k = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) *= -1.0;
      k.col(j) *= -1.0;
    }
    if (!(r(j, j) > 1e-13 * g.m.col(j).norm()))
      throw std::runtime_error("Iwasawa factorization lost rank in column " +
                               std::to_string(j));
  }
  std::vector<double> h(n);
  Eigen::MatrixXd upper = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    h[i] = std::log(r(i, i));
    for (int j = i + 1; j < n; ++j) upper(i, j) = r(i, j) / r(i, i);
  }
  double mean = 0.0;
  for (double v : h) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : h) v -= mean;

  IwasawaTriple triple;
  triple.k = std::move(k);
  triple.H = make_chamber_vector(datum, std::move(h));
  triple.u = std::move(upper);
  return triple;
}

double length(const RootDatum& datum, const GroupElement& g) {
  if (g.n() != datum.n)
    throw std::invalid_argument("group element dimension does not match the datum");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.m);
  return killing_norm(datum, chamber_from_log_singular(datum, svd.singularValues()));
}

}  // namespace rdcheck
