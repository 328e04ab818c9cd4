#pragma once

#include <string>
#include <vector>

namespace rdcheck {

/// Normalization of the invariant metric on the Cartan subspace.
/// killing: the Killing form of sl(n,R), <X,Y> = 2n tr(XY) on diagonal
/// matrices. trace: the plain trace form tr(XY). The Killing choice is the
/// default everywhere; the trace form is exposed as a configuration switch.
enum class NormKind { killing, trace };

/// A root of sl(n,R) in coordinates: the functional e_i - e_j on diagonal
/// matrices, stored as the index pair (i, j), 0-based, i != j.
struct Root {
  int i = 0;
  int j = 0;
};

/// Structural data of the restricted root system of SL(n,R).
///
/// The Cartan subspace a is the space of traceless real diagonal n x n
/// matrices, dimension n - 1. Restricted roots are e_i - e_j (i != j), all
/// with multiplicity one; the positive system is {e_i - e_j : i < j}.
struct RootDatum {
  int n = 0;                       ///< rank of SL(n,R), n >= 2
  int cartan_dim = 0;              ///< dim a = n - 1
  std::vector<Root> positive_roots;
  std::vector<int> multiplicities; ///< parallel to positive_roots, all 1
  int r = 0;                       ///< number of positive roots, n(n-1)/2
  NormKind norm = NormKind::killing;
};

/// A point of the Cartan subspace in diagonal coordinates (h_1, ..., h_n),
/// sum h_i = 0. chamber indicates membership in the closed positive chamber
/// h_1 >= h_2 >= ... >= h_n, which jacobian() and the spherical-function
/// routines require.
struct ChamberVector {
  std::vector<double> h;
  bool chamber = false;
};

/// Builds the root datum for SL(n,R). Throws std::invalid_argument for
/// n < 2.
RootDatum build_root_datum(int n, NormKind norm = NormKind::killing);

/// Validates diagonal coordinates (finite, sum zero within 1e-12) and tags
/// whether they lie in the closed positive chamber. Throws
/// std::invalid_argument on size mismatch or a nonzero sum.
ChamberVector make_chamber_vector(const RootDatum& datum, std::vector<double> h);

/// Value of the root on a Cartan vector: h_i - h_j.
double root_value(const Root& root, const ChamberVector& H);

/// Coefficients of the half sum of positive roots: rho(H) = sum_i c_i h_i
/// with c_i = (n + 1)/2 - i (1-based i). Exact in floating point.
std::vector<double> rho_coefficients(const RootDatum& datum);

/// rho(H) for H in diagonal coordinates.
double rho_value(const RootDatum& datum, const ChamberVector& H);

/// Norm of H in the metric selected by the datum. Killing: sqrt(2n sum
/// h_i^2); trace: sqrt(sum h_i^2).
double killing_norm(const RootDatum& datum, const ChamberVector& H);

/// Spherical volume density J(H) = prod_{alpha > 0} sinh(alpha(H))^{m_alpha}.
/// Requires H in the closed positive chamber (all alpha(H) >= 0 within
/// 1e-12); throws std::domain_error otherwise. Vanishes on chamber walls.
double jacobian(const RootDatum& datum, const ChamberVector& H);

/// Critical exponent for the rapid-decay integral: dim a + 2r = n^2 - 1.
/// The integral over the group converges exactly for d above this value.
double rd_threshold(const RootDatum& datum);

/// Serializes the datum as a single-line JSON object with keys n,
/// cartan_dim, roots, multiplicities, r, threshold.
std::string to_json(const RootDatum& datum);

}  // namespace rdcheck
