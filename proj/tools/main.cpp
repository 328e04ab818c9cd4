/// rdcheck: command-line front door of the rapid-decay toolkit. Structured
/// results go to standard output as single-line JSON or CSV (17 significant
/// digits), diagnostics to standard error. Exit codes: 0 success, 1
/// verification violations, 2 invalid usage or malformed input, 3 divergent
/// tail.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rdcheck/boundary.hpp"
#include "rdcheck/decompositions.hpp"
#include "rdcheck/detail/format.hpp"
#include "rdcheck/quadrature.hpp"
#include "rdcheck/rd_integral.hpp"
#include "rdcheck/root_system.hpp"
#include "rdcheck/spherical.hpp"
#include "rdcheck/verification.hpp"

namespace {

using rdcheck::detail::format_double;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_divergent = 3;

/// Parsed --group value: sl<n> with n >= 2.
int parse_group(const std::string& group) {
  if (group.size() < 3 || group.compare(0, 2, "sl") != 0)
    throw CLI::ValidationError("--group", "expected sl<n>, e.g. sl2 or sl3");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(group.substr(2), &used);
    if (used != group.size() - 2) throw std::invalid_argument(group);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--group", "expected sl<n>, e.g. sl2 or sl3");
  }
  if (n < 2) throw CLI::ValidationError("--group", "need n >= 2");
  return n;
}

int parse_numeric_group(const std::string& group) {
  const int n = parse_group(group);
  if (n != 2 && n != 3)
    throw CLI::ValidationError("--group", "numeric commands support sl2 and sl3");
  return n;
}

rdcheck::NormKind parse_norm(const std::string& norm) {
  if (norm == "killing") return rdcheck::NormKind::killing;
  if (norm == "trace") return rdcheck::NormKind::trace;
  throw CLI::ValidationError("--norm", "expected killing or trace");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::string json_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << format_double(v[i]);
  }
  os << "]";
  return os.str();
}

std::string json_matrix(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ",";
    os << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << format_double(m(i, j));
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string json_grids(const rdcheck::RDGrids& grids) {
  std::ostringstream os;
  os << "{\"chamber_points\":" << grids.chamber_points
     << ",\"xi_density\":" << format_double(grids.xi_density)
     << ",\"xi_outer\":" << grids.xi_outer << "}";
  return os.str();
}

std::string json_report(const rdcheck::RDReport& report) {
  std::ostringstream os;
  os << "{\"n\":" << report.n << ",\"d\":" << format_double(report.d)
     << ",\"radius\":" << format_double(report.radius)
     << ",\"grids\":" << json_grids(report.grids)
     << ",\"estimate\":" << format_double(report.estimate)
     << ",\"c_est\":" << format_double(report.c_est)
     << ",\"c_certified\":" << format_double(report.c_certified)
     << ",\"tail_bound\":";
  if (report.tail.finite)
    os << format_double(report.tail.value);
  else
    os << "\"infinite\"";
  os << ",\"divergent_tail\":" << (report.divergent_tail ? "true" : "false")
     << ",\"converged\":" << (report.converged ? "true" : "false")
     << ",\"doubling_radii\":" << json_vector(report.doubling_radii)
     << ",\"doubling_estimates\":" << json_vector(report.doubling_estimates)
     << ",\"chamber_nodes\":" << report.chamber_nodes << "}";
  return os.str();
}

std::string json_check(const rdcheck::CheckStat& stat) {
  std::ostringstream os;
  os << "{\"violations\":" << stat.violations
     << ",\"worst\":" << format_double(stat.worst) << "}";
  return os.str();
}

std::string json_verification(const rdcheck::VerificationRun& run) {
  const rdcheck::VerificationConfig& c = run.config;
  std::ostringstream os;
  os << "{\"config\":{\"boundary_points\":" << c.boundary_points
     << ",\"k_points\":" << c.k_points << ",\"bandwidth\":" << c.bandwidth
     << ",\"chamber_points\":" << c.chamber_points
     << ",\"d\":" << format_double(c.d)
     << ",\"radius\":" << format_double(c.radius) << ",\"trials\":" << c.trials
     << ",\"seed\":" << c.seed << ",\"tol\":" << format_double(c.tol)
     << ",\"norm\":\"" << (c.norm == rdcheck::NormKind::killing ? "killing" : "trace")
     << "\"},\"constant\":" << json_report(run.constant_report)
     << ",\"linearization\":" << json_check(run.linearization)
     << ",\"domination\":" << json_check(run.domination)
     << ",\"cauchy_schwarz\":" << json_check(run.cauchy_schwarz)
     << ",\"master\":" << json_check(run.master)
     << ",\"master_lhs_worst\":" << format_double(run.master_lhs_worst)
     << ",\"master_margin_min\":" << format_double(run.master_margin_min)
     << ",\"pass\":" << (run.pass ? "true" : "false") << "}";
  return os.str();
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("--matrix is not valid JSON: ") + e.what());
  }
  if (!parsed.is_array() || parsed.empty())
    throw std::invalid_argument("--matrix must be a JSON array of rows");
  const std::size_t n = parsed.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = parsed[i];
    if (!row.is_array() || row.size() != n)
      throw std::invalid_argument("--matrix must be square (rows of equal length)");
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number())
        throw std::invalid_argument("--matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j].get<double>();
    }
  }
  return m;
}

struct CommonOptions {
  std::string group = "sl2";
  std::string norm = "killing";
  std::string out;
};

int run_roots(const CommonOptions& common) {
  const int n = parse_group(common.group);
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n, parse_norm(common.norm));
  emit(common.out, rdcheck::to_json(datum) + "\n");
  return exit_ok;
}

int run_threshold(const CommonOptions& common) {
  const int n = parse_group(common.group);
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n, parse_norm(common.norm));
  emit(common.out,
       std::to_string(std::llround(rdcheck::rd_threshold(datum))) + "\n");
  return exit_ok;
}

int run_polar(const CommonOptions& common, const std::string& matrix_text) {
  const Eigen::MatrixXd m = parse_matrix(matrix_text);
  const rdcheck::GroupElement g = rdcheck::group_element(m);
  const rdcheck::RootDatum datum =
      rdcheck::build_root_datum(g.n(), parse_norm(common.norm));
  const rdcheck::PolarTriple triple = rdcheck::cartan_decompose(datum, g);
  const Eigen::MatrixXd recon =
      triple.k1 * rdcheck::exp_cartan(datum, triple.H).m * triple.k2;
  std::ostringstream os;
  os << "{\"k1\":" << json_matrix(triple.k1)
     << ",\"H\":" << json_vector(triple.H.h)
     << ",\"k2\":" << json_matrix(triple.k2)
     << ",\"recon_error\":" << format_double((recon - g.m).norm()) << "}\n";
  emit(common.out, os.str());
  return exit_ok;
}

int run_xi(const CommonOptions& common, double t_max, int samples, int grid) {
  const int n = parse_numeric_group(common.group);
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n, parse_norm(common.norm));
  if (samples < 1) throw CLI::ValidationError("--samples", "need at least 1");
  if (!(t_max > 0.0)) throw CLI::ValidationError("--t-max", "need t-max > 0");

  std::ostringstream os;
  os << "t,xi,envelope_ratio\n";
  if (grid == 0) {
    for (const rdcheck::XiSample& s :
         rdcheck::sample_spherical_ray(datum, t_max, samples))
      os << format_double(s.t) << "," << format_double(s.xi) << ","
         << format_double(s.envelope_ratio) << "\n";
  } else {
    // A fixed uniform grid instead of the adapted rules; accurate for
    // moderate t only, which is exactly what the flag is for (grid studies).
    if (grid < 2) throw CLI::ValidationError("--grid", "need at least 2 points");
    const rdcheck::QuadratureGrid k_grid =
        n == 2 ? rdcheck::boundary_grid(grid + (grid % 2))
               : rdcheck::so3_probability_grid(grid);
    for (int i = 0; i <= samples; ++i) {
      const double t = t_max * i / samples;
      const rdcheck::ChamberVector h = rdcheck::make_chamber_vector(
          datum, n == 2 ? std::vector<double>{t, -t} : std::vector<double>{t, 0.0, -t});
      const double xi =
          n == 2 ? rdcheck::xi_boundary(datum, h, k_grid)
                 : rdcheck::xi_iwasawa(datum, rdcheck::exp_cartan(datum, h), k_grid);
      const double envelope = xi * std::exp(rdcheck::rho_value(datum, h)) /
                              std::pow(1.0 + rdcheck::killing_norm(datum, h),
                                       static_cast<double>(datum.r));
      os << format_double(t) << "," << format_double(xi) << ","
         << format_double(envelope) << "\n";
    }
  }
  emit(common.out, os.str());
  return exit_ok;
}

int run_rd_constant(const CommonOptions& common, double d, double radius, int grid) {
  const int n = parse_numeric_group(common.group);
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n, parse_norm(common.norm));
  if (!(radius > 0.0)) throw CLI::ValidationError("--radius", "need radius > 0");
  rdcheck::RDGrids grids = rdcheck::RDGrids::defaults_for(datum);
  if (grid != 0) {
    if (grid < 2) throw CLI::ValidationError("--grid", "need at least 2 points");
    grids.chamber_points = grid;
  }
  const rdcheck::RDReport report = rdcheck::rd_constant(datum, d, radius, grids);
  emit(common.out, json_report(report) + "\n");
  return report.divergent_tail ? exit_divergent : exit_ok;
}

int run_divergence(const CommonOptions& common, double d, std::vector<double> radii) {
  const int n = parse_numeric_group(common.group);
  const rdcheck::RootDatum datum = rdcheck::build_root_datum(n, parse_norm(common.norm));
  if (radii.empty()) throw CLI::ValidationError("--radii", "need at least one radius");
  const std::vector<rdcheck::RadiusEstimate> scan = rdcheck::divergence_scan(
      datum, d, radii, rdcheck::RDGrids::defaults_for(datum));
  std::ostringstream os;
  os << "radius,partial_integral\n";
  for (const rdcheck::RadiusEstimate& r : scan)
    os << format_double(r.radius) << "," << format_double(r.estimate) << "\n";
  emit(common.out, os.str());
  return exit_ok;
}

int run_verify(const CommonOptions& common, double d, double radius, int trials,
               std::uint64_t seed, double tol, int grid) {
  const int n = parse_numeric_group(common.group);
  if (n != 2) throw CLI::ValidationError("--group", "verify supports sl2 only");
  rdcheck::VerificationConfig config;
  config.d = d;
  config.radius = radius;
  config.trials = trials;
  config.seed = seed;
  config.tol = tol;
  config.norm = parse_norm(common.norm);
  if (grid != 0) config.boundary_points = grid;

  const rdcheck::RootDatum datum = rdcheck::build_root_datum(2, config.norm);
  if (!(config.d > rdcheck::rd_threshold(datum))) {
    std::ostringstream os;
    os << "{\"divergent_tail\":true,\"d\":" << format_double(config.d)
       << ",\"threshold\":" << rdcheck::rd_threshold(datum) << "}\n";
    emit(common.out, os.str());
    std::cerr << "verify: d = " << format_double(config.d)
              << " is at or below the threshold " << rdcheck::rd_threshold(datum)
              << "; no finite constant exists\n";
    return exit_divergent;
  }

  const rdcheck::VerificationRun run = rdcheck::run_verification(config);
  emit(common.out, json_verification(run) + "\n");
  return run.pass ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rapid-decay toolkit for SL(n,R)"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string matrix_text;
  double d = 4.0, radius = 20.0, t_max = 10.0, tol = 1e-8;
  int samples = 20, grid = 0, trials = 100;
  std::uint64_t seed = 42;
  std::vector<double> radii;

  const auto add_common = [&](CLI::App* cmd, bool with_norm = true) {
    cmd->add_option("--group", common.group, "group sl<n>, e.g. sl2");
    if (with_norm)
      cmd->add_option("--norm", common.norm, "Cartan norm: killing or trace");
    cmd->add_option("--out", common.out, "output file (default: stdout)");
  };

  CLI::App* roots = app.add_subcommand("roots", "root system summary as JSON");
  add_common(roots);

  CLI::App* threshold =
      app.add_subcommand("threshold", "rapid-decay exponent threshold");
  add_common(threshold);

  CLI::App* polar = app.add_subcommand("polar", "Cartan decomposition of a matrix");
  polar->add_option("--matrix", matrix_text, "matrix as JSON rows, e.g. [[1,0],[0,1]]")
      ->required();
  add_common(polar);

  CLI::App* xi = app.add_subcommand(
      "xi", "spherical function along the chamber ray as CSV");
  xi->add_option("--t-max", t_max, "largest ray parameter");
  xi->add_option("--samples", samples, "number of steps (samples + 1 rows)");
  xi->add_option("--grid", grid,
                 "uniform grid size; 0 (default) selects the adapted rules");
  add_common(xi);

  CLI::App* rd = app.add_subcommand("rd-constant", "rapid-decay constant report");
  rd->add_option("--d", d, "decay exponent")->required();
  rd->add_option("--radius", radius, "chamber truncation radius");
  rd->add_option("--grid", grid, "chamber grid points per axis (0: defaults)");
  add_common(rd);

  CLI::App* divergence = app.add_subcommand(
      "divergence", "partial integrals at increasing radii as CSV");
  divergence->add_option("--d", d, "decay exponent")->required();
  divergence->add_option("--radii", radii, "comma-separated radii")
      ->required()
      ->delimiter(',');
  add_common(divergence);

  CLI::App* verify = app.add_subcommand(
      "verify", "randomized verification of the proof chain");
  verify->add_option("--d", d, "decay exponent");
  verify->add_option("--radius", radius, "chamber truncation radius");
  verify->add_option("--trials", trials, "number of random trials");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "base tolerance");
  verify->add_option("--grid", grid, "boundary grid size (0: default 512)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (roots->parsed()) return run_roots(common);
    if (threshold->parsed()) return run_threshold(common);
    if (polar->parsed()) return run_polar(common, matrix_text);
    if (xi->parsed()) return run_xi(common, t_max, samples, grid);
    if (rd->parsed()) return run_rd_constant(common, d, radius, grid);
    if (divergence->parsed()) return run_divergence(common, d, radii);
    if (verify->parsed())
      return run_verify(common, d, radius, trials, seed, tol, grid);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "rdcheck: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rdcheck: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "rdcheck: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
