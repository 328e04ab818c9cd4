#include "rdcheck/root_system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rdcheck/detail/format.hpp"

namespace rdcheck {

namespace {

constexpr double k_trace_tol = 1e-12;    // |sum h_i| allowed for "traceless"
constexpr double k_chamber_tol = 1e-12;  // slack for closed-chamber tests

void check_dimension(const RootDatum& datum, const ChamberVector& H) {
  if (static_cast<int>(H.h.size()) != datum.n)
    throw std::invalid_argument("Cartan vector has wrong dimension for SL(" +
                                std::to_string(datum.n) + ",R)");
}

}  // namespace

RootDatum build_root_datum(int n, NormKind norm) {
  if (n < 2) throw std::invalid_argument("SL(n,R) requires n >= 2");
  RootDatum datum;
  datum.n = n;
  datum.cartan_dim = n - 1;
  datum.norm = norm;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      datum.positive_roots.push_back(Root{i, j});
      datum.multiplicities.push_back(1);
    }
  datum.r = static_cast<int>(datum.positive_roots.size());
  return datum;
}

ChamberVector make_chamber_vector(const RootDatum& datum, std::vector<double> h) {
  if (static_cast<int>(h.size()) != datum.n)
    throw std::invalid_argument("expected " + std::to_string(datum.n) +
                                " diagonal coordinates");
  double sum = 0.0;
  for (double v : h) {
    if (!std::isfinite(v))
      throw std::invalid_argument("Cartan coordinates must be finite");
    sum += v;
  }
  if (std::abs(sum) > k_trace_tol)
    throw std::invalid_argument("Cartan coordinates must sum to zero (got " +
                                detail::format_double(sum) + ")");
  ChamberVector H;
  H.h = std::move(h);
  H.chamber = true;
  for (std::size_t i = 0; i + 1 < H.h.size(); ++i)
    if (H.h[i] < H.h[i + 1] - k_chamber_tol) {
      H.chamber = false;
      break;
    }
  return H;
}

double root_value(const Root& root, const ChamberVector& H) {
  return H.h.at(root.i) - H.h.at(root.j);
}

std::vector<double> rho_coefficients(const RootDatum& datum) {
  std::vector<double> c(datum.n);
  for (int i = 0; i < datum.n; ++i)
    c[i] = 0.5 * (datum.n - 1 - 2 * i);  // (n + 1)/2 - (i + 1), exact
  return c;
}

double rho_value(const RootDatum& datum, const ChamberVector& H) {
  check_dimension(datum, H);
  const std::vector<double> c = rho_coefficients(datum);
  double v = 0.0;
  for (int i = 0; i < datum.n; ++i) v += c[i] * H.h[i];
  return v;
}

double killing_norm(const RootDatum& datum, const ChamberVector& H) {
  check_dimension(datum, H);
  double q = 0.0;
  for (double v : H.h) q += v * v;
  const double scale = datum.norm == NormKind::killing ? 2.0 * datum.n : 1.0;
  return std::sqrt(scale * q);
}

double jacobian(const RootDatum& datum, const ChamberVector& H) {
  check_dimension(datum, H);
  double prod = 1.0;
  for (std::size_t a = 0; a < datum.positive_roots.size(); ++a) {
    double v = root_value(datum.positive_roots[a], H);
    if (v < -k_chamber_tol)
      throw std::domain_error("Cartan vector outside the closed positive chamber");
    if (v < 0.0) v = 0.0;
    double factor = std::sinh(v);
    for (int m = 1; m < datum.multiplicities[a]; ++m) factor *= std::sinh(v);
    prod *= factor;
  }
  return prod;
}

double rd_threshold(const RootDatum& datum) {
  return static_cast<double>(datum.cartan_dim + 2 * datum.r);
}

std::string to_json(const RootDatum& datum) {
  std::ostringstream os;
  os << "{\"n\":" << datum.n << ",\"cartan_dim\":" << datum.cartan_dim
     << ",\"roots\":[";
  for (std::size_t a = 0; a < datum.positive_roots.size(); ++a) {
    if (a) os << ",";
    os << "[" << datum.positive_roots[a].i << "," << datum.positive_roots[a].j
       << "]";
  }
  os << "],\"multiplicities\":[";
  for (std::size_t a = 0; a < datum.multiplicities.size(); ++a) {
    if (a) os << ",";
    os << datum.multiplicities[a];
  }
  os << "],\"r\":" << datum.r
     << ",\"threshold\":" << detail::format_double(rd_threshold(datum)) << "}";
  return os.str();
}

}  // namespace rdcheck
