#pragma once

#include <Eigen/Dense>

#include "rdcheck/root_system.hpp"

namespace rdcheck {

/// An element of SL(n,R); the factory below is the only sanctioned
/// constructor path and validates membership.
struct GroupElement {
  Eigen::MatrixXd m;

  int n() const { return static_cast<int>(m.rows()); }
};

/// Validates that m is square with n >= 2, has finite entries, and
/// det m = 1 within 1e-9. Throws std::invalid_argument otherwise.
GroupElement group_element(Eigen::MatrixXd m);

/// exp(H) for a Cartan vector, a positive diagonal group element.
GroupElement exp_cartan(const RootDatum& datum, const ChamberVector& H);

/// Cartan factors g = k1 exp(H) k2: k1, k2 in SO(n), H in the closed
/// positive chamber.
struct PolarTriple {
  Eigen::MatrixXd k1;
  ChamberVector H;
  Eigen::MatrixXd k2;
};

/// Iwasawa factors g = k exp(H) u: k in SO(n), H the diagonal coordinates
/// of the abelian part (no chamber constraint), u unit upper triangular.
struct IwasawaTriple {
  Eigen::MatrixXd k;
  ChamberVector H;
  Eigen::MatrixXd u;
};

/// Cartan decomposition through the singular value decomposition; singular
/// values are sorted descending, so H is automatically in the closed
/// chamber, and the orthogonal factors are sign-corrected to determinant +1.
/// Throws std::runtime_error if the factorization degenerates numerically.
PolarTriple cartan_decompose(const RootDatum& datum, const GroupElement& g);

/// Iwasawa decomposition through a QR factorization with the diagonal of R
/// made positive; the orthogonal factor then has determinant +1. Throws
/// std::runtime_error when a diagonal entry collapses below roundoff scale
/// relative to its column.
IwasawaTriple iwasawa_decompose(const RootDatum& datum, const GroupElement& g);

/// Length function L(g) = |H(g)| with H(g) the Cartan middle factor, in the
/// norm selected by the datum. Bi-K-invariant and symmetric in g <-> g^-1.
double length(const RootDatum& datum, const GroupElement& g);

}  // namespace rdcheck
