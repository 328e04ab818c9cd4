#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "rdcheck/decompositions.hpp"

using namespace rdcheck;

namespace {

GroupElement random_element(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    double det = m.determinant();
    if (std::abs(det) < 0.1) continue;
    if (det < 0.0) {
      m.col(0) *= -1.0;
      det = -det;
    }
    return group_element(m / std::pow(det, 1.0 / n));
  }
}

bool is_special_orthogonal(const Eigen::MatrixXd& k, double tol) {
  const Eigen::MatrixXd gram =
      k * k.transpose() - Eigen::MatrixXd::Identity(k.rows(), k.cols());
  return gram.norm() < tol && std::abs(k.determinant() - 1.0) < tol;
}

}  // namespace

TEST_CASE("group element factory validates membership") {
  Eigen::MatrixXd ok(2, 2);
  ok << 2.0, 0.0, 0.0, 0.5;
  CHECK(group_element(ok).n() == 2);

  Eigen::MatrixXd bad_det(2, 2);
  bad_det << 2.0, 0.0, 0.0, 2.0;
  CHECK_THROWS_AS(group_element(bad_det), std::invalid_argument);

  CHECK_THROWS_AS(group_element(Eigen::MatrixXd::Ones(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(group_element(Eigen::MatrixXd::Identity(1, 1)), std::invalid_argument);

  Eigen::MatrixXd nan(2, 2);
  nan << 1.0, 0.0, 0.0, std::nan("");
  CHECK_THROWS_AS(group_element(nan), std::invalid_argument);
}

TEST_CASE("exp of a cartan vector") {
  const RootDatum datum = build_root_datum(2);
  const GroupElement g = exp_cartan(datum, make_chamber_vector(datum, {0.3, -0.3}));
  CHECK(g.m(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-15));
  CHECK(g.m(1, 1) == doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK(g.m(0, 1) == 0.0);
}

TEST_CASE("cartan decomposition round trip") {
  std::mt19937_64 rng(1);
  for (int n : {2, 3}) {
    const RootDatum datum = build_root_datum(n);
    for (int trial = 0; trial < 200; ++trial) {
      const GroupElement g = random_element(n, rng);
      const PolarTriple triple = cartan_decompose(datum, g);
      CHECK(is_special_orthogonal(triple.k1, 1e-12));
      CHECK(is_special_orthogonal(triple.k2, 1e-12));
      CHECK(triple.H.chamber);
      const Eigen::MatrixXd recon =
          triple.k1 * exp_cartan(datum, triple.H).m * triple.k2;
      CHECK((recon - g.m).norm() < 1e-10);
    }
  }
}

TEST_CASE("cartan decomposition of the identity") {
  const RootDatum datum = build_root_datum(3);
  const PolarTriple triple =
      cartan_decompose(datum, group_element(Eigen::MatrixXd::Identity(3, 3)));
  for (double h : triple.H.h) CHECK(std::abs(h) < 1e-14);
}

TEST_CASE("iwasawa decomposition round trip") {
  std::mt19937_64 rng(2);
  for (int n : {2, 3}) {
    const RootDatum datum = build_root_datum(n);
    for (int trial = 0; trial < 200; ++trial) {
      const GroupElement g = random_element(n, rng);
      const IwasawaTriple triple = iwasawa_decompose(datum, g);
      CHECK(is_special_orthogonal(triple.k, 1e-12));
      double hsum = 0.0;
      for (double h : triple.H.h) hsum += h;
      CHECK(std::abs(hsum) < 1e-12);
      Eigen::MatrixXd exph = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) exph(i, i) = std::exp(triple.H.h[i]);
      for (int i = 0; i < n; ++i) {
        CHECK(triple.u(i, i) == doctest::Approx(1.0).epsilon(1e-13));
        for (int j = 0; j < i; ++j) CHECK(triple.u(i, j) == 0.0);
      }
      CHECK((triple.k * exph * triple.u - g.m).norm() < 1e-10);
    }
  }
}

TEST_CASE("length is a bi-K-invariant subadditive symmetric gauge") {
  std::mt19937_64 rng(3);
  const RootDatum datum = build_root_datum(2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979);

  CHECK(length(datum, group_element(Eigen::MatrixXd::Identity(2, 2))) < 1e-12);

  const ChamberVector h = make_chamber_vector(datum, {1.2, -1.2});
  CHECK(length(datum, exp_cartan(datum, h)) ==
        doctest::Approx(killing_norm(datum, h)).epsilon(1e-12));

  for (int trial = 0; trial < 200; ++trial) {
    const GroupElement g = random_element(2, rng);
    const GroupElement gh = random_element(2, rng);
    const double lg = length(datum, g), lh = length(datum, gh);

    CHECK(length(datum, group_element(g.m * gh.m)) <= lg + lh + 1e-9);
    CHECK(length(datum, group_element(g.m.inverse())) == doctest::Approx(lg).epsilon(1e-10));

    const double phi1 = angle(rng), phi2 = angle(rng);
    Eigen::Matrix2d k1, k2;
    k1 << std::cos(phi1), -std::sin(phi1), std::sin(phi1), std::cos(phi1);
    k2 << std::cos(phi2), -std::sin(phi2), std::sin(phi2), std::cos(phi2);
    CHECK(length(datum, group_element(k1 * g.m * k2)) ==
          doctest::Approx(lg).epsilon(1e-10));
  }
}

TEST_CASE("length in the trace norm") {
  const RootDatum datum = build_root_datum(2, NormKind::trace);
  const ChamberVector h = make_chamber_vector(datum, {2.0, -2.0});
  CHECK(length(datum, exp_cartan(datum, h)) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
}
