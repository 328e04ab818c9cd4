#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <stdexcept>

#include "rdcheck/spherical.hpp"

using namespace rdcheck;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Closed form of the SL(2,R) spherical function at H = (t, -t):
///   Xi(t) = (2/pi) e^{-t} K(sqrt(1 - e^{-4t})),
/// K the complete elliptic integral of the first kind (modulus convention).
double xi_elliptic(double t) {
  const double k = std::sqrt(1.0 - std::exp(-4.0 * t));
  return (2.0 / 3.14159265358979323846) * std::exp(-t) * boost::math::ellint_1(k);
}

}  // namespace

TEST_CASE("spherical function at the identity is one") {
  const RootDatum datum = build_root_datum(2);
  const ChamberVector zero = make_chamber_vector(datum, {0.0, 0.0});
  CHECK(xi_boundary(datum, zero, boundary_grid(64)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(xi_boundary(datum, zero, adapted_boundary_grid(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  const RootDatum datum3 = build_root_datum(3);
  const GroupElement id = group_element(Eigen::MatrixXd::Identity(3, 3));
  CHECK(xi_iwasawa(datum3, id, so3_probability_grid(8)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("adapted boundary quadrature hits the elliptic closed form") {
  const RootDatum datum = build_root_datum(2);
  for (double t : {0.3, 0.7, 1.5, 2.5}) {
    const ChamberVector h = make_chamber_vector(datum, {t, -t});
    const double computed = xi_boundary(datum, h, adapted_boundary_grid(t));
    CHECK(close_rel(computed, xi_elliptic(t), 1e-12));
  }
}

TEST_CASE("spherical values deep in the chamber") {
  // Reference values from 50-digit evaluation of the elliptic closed form.
  const struct {
    double t, xi;
  } table[] = {
      {0.25, 0.98459519569583315511}, {0.5, 0.94086215924934981862},
      {1.0, 0.79565169560597401944},  {2.0, 0.46409929404960529806},
      {3.0, 0.23411210254725221882},  {5.0, 0.048841626790543287205},
      {10.0, 0.00061811722201808214261}, {20.0, 5.4305901463232188e-8},
      {30.0, 3.6569336729841012e-12},
  };
  const RootDatum datum = build_root_datum(2);
  for (const auto& row : table) {
    const ChamberVector h = make_chamber_vector(datum, {row.t, -row.t});
    const double computed = xi_boundary(datum, h, adapted_boundary_grid(row.t));
    CHECK(close_rel(computed, row.xi, 1e-10));
  }
}

TEST_CASE("uniform rule underestimates once the spike escapes it") {
  const RootDatum datum = build_root_datum(2);
  const QuadratureGrid uniform = boundary_grid(512);
  for (double t : {0.5, 1.0, 2.0}) {
    const ChamberVector h = make_chamber_vector(datum, {t, -t});
    CHECK(close_rel(xi_boundary(datum, h, uniform),
                    xi_boundary(datum, h, adapted_boundary_grid(t)), 1e-9));
  }
  for (double t : {5.0, 10.0}) {
    const ChamberVector h = make_chamber_vector(datum, {t, -t});
    CHECK(xi_boundary(datum, h, uniform) <=
          xi_boundary(datum, h, adapted_boundary_grid(t)) + 1e-12);
  }
}

TEST_CASE("boundary and iwasawa routes agree on commensurate grids") {
  // A circle grid of 2N points covers the boundary grid of N points twice,
  // so the two integral representations reduce to the same finite sum.
  const RootDatum datum = build_root_datum(2);
  const int n_pts = 256;
  const QuadratureGrid bgrid = boundary_grid(n_pts);
  const QuadratureGrid kgrid = circle_probability_grid(2 * n_pts);
  for (double t : {0.5, 2.0, 5.0}) {
    const ChamberVector h = make_chamber_vector(datum, {t, -t});
    const double via_boundary = xi_boundary(datum, h, bgrid);
    const double via_iwasawa = xi_iwasawa(datum, exp_cartan(datum, h), kgrid);
    CHECK(close_rel(via_boundary, via_iwasawa, 1e-13));
  }
}

TEST_CASE("sl3 spherical function against plain and adapted grids") {
  const RootDatum datum = build_root_datum(3);
  const ChamberVector h = make_chamber_vector(datum, {1.0, 0.0, -1.0});
  const GroupElement g = exp_cartan(datum, h);
  // Converged value, frozen from density scans of the adapted rule.
  const double reference = 0.6896982569629;
  CHECK(close_rel(xi_iwasawa(datum, g, so3_adapted_grid(h)), reference, 1e-9));
  // The plain 64^3 Euler grid resolves this moderate H to ~5e-7.
  CHECK(close_rel(xi_iwasawa(datum, g, so3_probability_grid(64)), reference, 1e-5));
}

TEST_CASE("adapted sl3 rule is density-stable deep in the chamber") {
  const RootDatum datum = build_root_datum(3);
  for (const auto& hs : {std::vector<double>{3.0, 0.5, -3.5},
                         std::vector<double>{5.0, 0.0, -5.0},
                         std::vector<double>{6.0, 2.0, -8.0}}) {
    const ChamberVector h = make_chamber_vector(datum, hs);
    const GroupElement g = exp_cartan(datum, h);
    const double coarse = xi_iwasawa(datum, g, so3_adapted_grid(h, 4.0, 24));
    const double fine = xi_iwasawa(datum, g, so3_adapted_grid(h, 6.0, 32));
    CHECK(close_rel(coarse, fine, 1e-10));
    CHECK(coarse > 0.0);
    CHECK(coarse < 1.0);
  }
}

TEST_CASE("closed-form circle average matches the materialized sl3 grid") {
  const RootDatum datum = build_root_datum(3);
  const ChamberVector zero = make_chamber_vector(datum, {0.0, 0.0, 0.0});
  CHECK(xi_so3_adapted(datum, zero) == doctest::Approx(1.0).epsilon(1e-13));
  const ChamberVector h1 = make_chamber_vector(datum, {1.0, 0.0, -1.0});
  CHECK(close_rel(xi_so3_adapted(datum, h1), 0.6896982569629, 1e-9));
  for (const auto& hs : {std::vector<double>{3.0, 0.5, -3.5},
                         std::vector<double>{6.0, 2.0, -8.0},
                         std::vector<double>{10.0, 3.0, -13.0}}) {
    const ChamberVector h = make_chamber_vector(datum, hs);
    const double closed = xi_so3_adapted(datum, h);
    const double materialized =
        xi_iwasawa(datum, exp_cartan(datum, h), so3_adapted_grid(h));
    CHECK(close_rel(closed, materialized, 1e-12));
    CHECK(close_rel(closed, xi_so3_adapted(datum, h, 6.0, 32), 1e-12));
  }
}

TEST_CASE("ray samples decay monotonically with stable envelope") {
  const RootDatum datum = build_root_datum(2);
  const std::vector<XiSample> samples = sample_spherical_ray(datum, 3.0, 6);
  REQUIRE(samples.size() == 7);
  CHECK(samples[0].t == 0.0);
  CHECK(samples[0].xi == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < samples.size(); ++i) {
    CHECK(samples[i].t == doctest::Approx(0.5 * i).epsilon(1e-14));
    CHECK(samples[i].xi < samples[i - 1].xi);
    CHECK(samples[i].envelope_ratio > 0.0);
  }
}

TEST_CASE("envelope ratios near their asymptote") {
  // rho(H_t) = t and |H_t| = 2 sqrt(2) t with r = 1, so the tracked ratio
  // is xi e^t / (1 + 2 sqrt(2) t); reference values from the elliptic form.
  const struct {
    double t, ratio;
  } table[] = {{10.0, 0.4649232256084315},
               {20.0, 0.45766893086857424},
               {30.0, 0.45519450136986888}};
  const RootDatum datum = build_root_datum(2);
  const std::vector<XiSample> samples = sample_spherical_ray(datum, 30.0, 3);
  REQUIRE(samples.size() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(samples[i + 1].t == doctest::Approx(table[i].t));
    CHECK(close_rel(samples[i + 1].envelope_ratio, table[i].ratio, 1e-9));
  }

  const EnvelopeFit fit = decay_envelope_fit(samples);
  CHECK(fit.c_est >= 0.46);
  CHECK(fit.c_certified == doctest::Approx(2.0 * fit.c_est).epsilon(1e-15));
  CHECK_THROWS_AS(decay_envelope_fit({}), std::invalid_argument);
}

TEST_CASE("spherical function rejects mismatched inputs") {
  const RootDatum datum = build_root_datum(2);
  const ChamberVector h = make_chamber_vector(datum, {1.0, -1.0});
  CHECK_THROWS_AS(xi_boundary(datum, h, circle_probability_grid(64)),
                  std::invalid_argument);
  const ChamberVector outside = make_chamber_vector(datum, {-1.0, 1.0});
  CHECK_THROWS_AS(xi_boundary(datum, outside, boundary_grid(64)),
                  std::domain_error);
  const RootDatum datum3 = build_root_datum(3);
  CHECK_THROWS_AS(xi_boundary(datum3, make_chamber_vector(datum3, {1.0, 0.0, -1.0}),
                              boundary_grid(64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(xi_so3_adapted(datum, h), std::invalid_argument);
  CHECK_THROWS_AS(xi_so3_adapted(datum3, make_chamber_vector(datum3, {0.0, 1.0, -1.0})),
                  std::domain_error);
}
