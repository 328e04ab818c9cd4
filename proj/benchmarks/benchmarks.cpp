#include <benchmark/benchmark.h>

#include <random>

#include "rdcheck/boundary.hpp"
#include "rdcheck/decompositions.hpp"
#include "rdcheck/quadrature.hpp"
#include "rdcheck/rd_integral.hpp"
#include "rdcheck/spherical.hpp"
#include "rdcheck/verification.hpp"

namespace {

rdcheck::GroupElement random_element(int n, std::mt19937_64& rng) {
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
    return rdcheck::group_element(m / std::pow(det, 1.0 / n));
  }
}

void bm_cartan_decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n);
  std::mt19937_64 rng(7);
  const rdcheck::GroupElement g = random_element(n, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::cartan_decompose(datum, g));
}
BENCHMARK(bm_cartan_decompose)->Arg(2)->Arg(3);

void bm_iwasawa_decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n);
  std::mt19937_64 rng(7);
  const rdcheck::GroupElement g = random_element(n, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::iwasawa_decompose(datum, g));
}
BENCHMARK(bm_iwasawa_decompose)->Arg(2)->Arg(3);

void bm_xi_boundary_uniform(benchmark::State& state) {
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(2);
  const rdcheck::QuadratureGrid grid =
      rdcheck::boundary_grid(static_cast<int>(state.range(0)));
  const rdcheck::ChamberVector h = rdcheck::make_chamber_vector(datum, {2.0, -2.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::xi_boundary(datum, h, grid));
}
BENCHMARK(bm_xi_boundary_uniform)->Arg(512)->Arg(4096);

void bm_xi_boundary_adapted(benchmark::State& state) {
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(2);
  const double t = static_cast<double>(state.range(0));
  const rdcheck::QuadratureGrid grid = rdcheck::adapted_boundary_grid(t);
  const rdcheck::ChamberVector h = rdcheck::make_chamber_vector(datum, {t, -t});
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::xi_boundary(datum, h, grid));
}
BENCHMARK(bm_xi_boundary_adapted)->Arg(2)->Arg(10);

void bm_xi_iwasawa_sl3_adapted(benchmark::State& state) {
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(3);
  const rdcheck::ChamberVector h =
      rdcheck::make_chamber_vector(datum, {3.0, 0.5, -3.5});
  const rdcheck::QuadratureGrid grid = rdcheck::so3_adapted_grid(h);
  const rdcheck::GroupElement g = rdcheck::exp_cartan(datum, h);
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::xi_iwasawa(datum, g, grid));
}
BENCHMARK(bm_xi_iwasawa_sl3_adapted);

void bm_rd_integrand_sl3(benchmark::State& state) {
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(3);
  const rdcheck::ChamberVector h =
      rdcheck::make_chamber_vector(datum, {3.0, 0.5, -3.5});
  const rdcheck::RDGrids grids = rdcheck::RDGrids::defaults_for(datum);
  for (auto _ : state)
    benchmark::DoNotOptimize(rdcheck::rd_integrand(datum, h, 9.0, grids));
}
BENCHMARK(bm_rd_integrand_sl3);

void bm_k_average(benchmark::State& state) {
  const rdcheck::QuadratureGrid bgrid =
      rdcheck::boundary_grid(static_cast<int>(state.range(0)));
  const rdcheck::QuadratureGrid kgrid = rdcheck::circle_probability_grid(64);
  std::mt19937_64 rng(7);
  const rdcheck::BoundaryFunction xi = rdcheck::random_positive_unit(rng, 7, bgrid);
  for (auto _ : state) benchmark::DoNotOptimize(rdcheck::k_average_F(xi, kgrid));
}
BENCHMARK(bm_k_average)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
