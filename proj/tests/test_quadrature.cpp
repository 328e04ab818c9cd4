#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "rdcheck/quadrature.hpp"
#include "rdcheck/root_system.hpp"

using namespace rdcheck;

namespace {
constexpr double pi = std::numbers::pi;

double weight_sum(const QuadratureGrid& grid) {
  double s = 0.0;
  for (double w : grid.weights) s += w;
  return s;
}
}  // namespace

TEST_CASE("gauss rule integrates polynomials to full degree") {
  const QuadratureGrid rule = gauss_interval(5, 0.0, 1.0);
  REQUIRE(rule.size() == 5);
  CHECK(weight_sum(rule) == doctest::Approx(1.0).epsilon(1e-15));
  double ninth = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    ninth += rule.weights[i] * std::pow(rule.nodes[i], 9);
  CHECK(ninth == doctest::Approx(0.1).epsilon(1e-14));
  for (std::size_t i = 0; i + 1 < rule.size(); ++i)
    CHECK(rule.nodes[i] < rule.nodes[i + 1]);
  CHECK(rule.nodes.front() > 0.0);
  CHECK(rule.nodes.back() < 1.0);
}

TEST_CASE("gauss rule on a shifted interval") {
  const QuadratureGrid rule = gauss_interval(48, -2.0, 3.0);
  CHECK(weight_sum(rule) == doctest::Approx(5.0).epsilon(1e-14));
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    integral += rule.weights[i] * std::exp(rule.nodes[i]);
  CHECK(integral == doctest::Approx(std::exp(3.0) - std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("gauss rule rejects bad input") {
  CHECK_THROWS_AS(gauss_interval(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_interval(4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("circle grid kills nonzero frequencies") {
  const QuadratureGrid grid = circle_probability_grid(32);
  REQUIRE(grid.size() == 32);
  CHECK(weight_sum(grid) == doctest::Approx(1.0).epsilon(1e-15));
  for (int k : {1, 5, 17}) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      re += grid.weights[j] * std::cos(k * grid.nodes[j]);
      im += grid.weights[j] * std::sin(k * grid.nodes[j]);
    }
    CHECK(std::abs(re) < 1e-14);
    CHECK(std::abs(im) < 1e-14);
  }
}

TEST_CASE("boundary grid is the midpoint rule on [0, pi)") {
  const QuadratureGrid grid = boundary_grid(8);
  REQUIRE(grid.size() == 8);
  CHECK(grid.kind == GridKind::boundary_uniform);
  CHECK(weight_sum(grid) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(grid.nodes[j] == doctest::Approx(pi * (j + 0.5) / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(boundary_grid(7), std::invalid_argument);
  CHECK_THROWS_AS(boundary_grid(0), std::invalid_argument);
}

TEST_CASE("adapted interval rule resolves spikes of any width") {
  // Closed form: the integral of w / (w^2 + sin^2 x) over [0, pi/2] equals
  // (pi/2) / sqrt(1 + w^2) for every w > 0.
  for (double w : {0.5, 1e-3, 1e-8, 1e-14}) {
    const QuadratureGrid rule = adapted_interval_rule(w);
    CHECK(rule.kind == GridKind::interval);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      CHECK(rule.nodes[i] > 0.0);
      CHECK(rule.nodes[i] <= pi / 2);
      CHECK(rule.weights[i] > 0.0);
      const double s = std::sin(rule.nodes[i]);
      sum += rule.weights[i] * w / (w * w + s * s);
    }
    const double exact = (pi / 2) / std::sqrt(1.0 + w * w);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK_THROWS_AS(adapted_interval_rule(0.0), std::invalid_argument);
  CHECK_THROWS_AS(adapted_interval_rule(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(adapted_interval_rule(1.0, 6.0, 0), std::invalid_argument);
}

TEST_CASE("adapted boundary rule has unit mass at any t") {
  for (double t : {0.0, 1.0, 3.0, 8.0, 30.0}) {
    const QuadratureGrid grid = adapted_boundary_grid(t);
    CHECK(grid.kind == GridKind::boundary_adapted);
    CHECK(weight_sum(grid) == doctest::Approx(1.0).epsilon(1e-12));
    const std::size_t m = grid.size() / 2;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      CHECK(std::abs(grid.nodes[j]) <= pi / 2);
      CHECK(grid.weights[j] > 0.0);
    }
    // Mirrored nodes are stored as exact negated angles, so the second half
    // of the rule resolves the wrap-side spike without losing the offset.
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(grid.nodes[m + j] == -grid.nodes[j]);
      CHECK(grid.weights[m + j] == grid.weights[j]);
    }
  }
  CHECK_THROWS_AS(adapted_boundary_grid(-0.5), std::invalid_argument);
}

TEST_CASE("so3 grid reproduces low moments of the sphere action") {
  const QuadratureGrid grid = so3_probability_grid(8);
  CHECK(grid.kind == GridKind::so3_euler);
  CHECK(grid.dim == 3);
  CHECK(weight_sum(grid) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double* node = grid.node(i);
    const Eigen::Matrix3d k = rotation_from_euler(node[0], node[1], node[2]);
    const Eigen::Vector3d v = k.col(2);
    mean += grid.weights[i] * v;
    second += grid.weights[i] * v * v.transpose();
  }
  CHECK(mean.norm() < 1e-14);
  CHECK((second - Eigen::Matrix3d::Identity() / 3.0).norm() < 1e-13);
}

TEST_CASE("adapted so3 grid consists of rotations") {
  const RootDatum datum = build_root_datum(3);
  const ChamberVector h = make_chamber_vector(datum, {2.0, 0.5, -2.5});
  const QuadratureGrid grid = so3_adapted_grid(h);
  CHECK(grid.kind == GridKind::so3_matrix);
  CHECK(grid.dim == 9);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.weights[i] > 0.0);
    const Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> k(grid.node(i));
    CHECK((k * k.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(k.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }

  const RootDatum datum2 = build_root_datum(2);
  CHECK_THROWS_AS(so3_adapted_grid(make_chamber_vector(datum2, {1.0, -1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(so3_adapted_grid(make_chamber_vector(datum, {0.0, 1.0, -1.0})),
                  std::invalid_argument);
}

TEST_CASE("chamber grid of sl2 covers the ray with flat weight") {
  const RootDatum datum = build_root_datum(2);
  const QuadratureGrid grid = chamber_grid(datum, 10.0, 48);
  CHECK(grid.kind == GridKind::chamber);
  CHECK(grid.dim == 2);
  CHECK(weight_sum(grid) == doctest::Approx(10.0).epsilon(1e-12));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double* h = grid.node(i);
    CHECK(h[0] >= 0.0);
    CHECK(h[0] + h[1] == doctest::Approx(0.0).epsilon(1e-15));
    const ChamberVector hv = make_chamber_vector(datum, {h[0], h[1]});
    CHECK(killing_norm(datum, hv) <= 10.0 + 1e-9);
  }

  const RootDatum trace = build_root_datum(2, NormKind::trace);
  CHECK(weight_sum(chamber_grid(trace, 10.0, 48)) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("chamber grid of sl3 covers the sector") {
  const RootDatum datum = build_root_datum(3);
  const double radius = 20.0;
  const QuadratureGrid grid = chamber_grid(datum, radius, 24);
  CHECK(grid.dim == 3);
  // Flat measure of the chamber disk sector: pi R^2 / 6.
  CHECK(weight_sum(grid) == doctest::Approx(pi * radius * radius / 6.0).epsilon(1e-9));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double* h = grid.node(i);
    const ChamberVector hv = make_chamber_vector(datum, {h[0], h[1], h[2]});
    CHECK(hv.chamber);
    CHECK(killing_norm(datum, hv) <= radius * (1.0 + 1e-12));
  }

  const RootDatum trace = build_root_datum(3, NormKind::trace);
  CHECK(weight_sum(chamber_grid(trace, radius, 24)) ==
        doctest::Approx(pi * radius * radius / 6.0).epsilon(1e-9));
}

TEST_CASE("chamber grid rejects unsupported rank and bad radius") {
  const RootDatum datum4 = build_root_datum(4);
  CHECK_THROWS_AS(chamber_grid(datum4, 10.0, 16), std::invalid_argument);
  const RootDatum datum2 = build_root_datum(2);
  CHECK_THROWS_AS(chamber_grid(datum2, -1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(chamber_grid(datum2, 10.0, 0), std::invalid_argument);
}
