#include "semalloc/utilmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace semalloc {

void check(const AccuracyParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("AccuracyParams: ") + what);
  };
  require(p.eta1 > 0.0, "eta1 must be positive");
  require(p.eta2 > 0.0 && p.eta2 <= 1.0, "eta2 must lie in (0, 1]");
  require(p.beta1 < 0.0, "beta1 must be negative");
  require(p.beta2 > 0.0, "beta2 must be positive");
  require(p.beta3 > 0.0 && p.beta3 <= 1.0, "beta3 must lie in (0, 1]");
  require(p.beta1 + p.beta3 >= 0.0, "beta1 + beta3 must be non-negative");
  require(p.c_max_cycles > 0.0, "c_max_cycles must be positive");
  require(p.d_max_bits > 0.0, "d_max_bits must be positive");
  require(p.raw_data_bits > 0.0, "raw_data_bits must be positive");
}

std::string to_string(UtilityKind kind) {
  return kind == UtilityKind::ConcaveAccuracy ? "concave" : "general";
}

UtilityKind utility_kind_from_string(const std::string& s) {
  if (s == "concave") return UtilityKind::ConcaveAccuracy;
  if (s == "general") return UtilityKind::GeneralReciprocal;
  throw std::invalid_argument("unknown utility kind '" + s + "' (expected concave|general)");
}

double accuracy_comp(double c, const AccuracyParams& p) {
  if (!(c > 0.0)) throw std::invalid_argument("accuracy_comp: workload must be positive");
  const double ratio = std::min(c, p.c_max_cycles) / p.c_max_cycles;
  const double lg = p.log_base == LogBase::Natural ? std::log(ratio) : std::log10(ratio);
  return std::max(0.0, p.eta1 * lg + p.eta2);
}

double accuracy_comm(double d, const AccuracyParams& p) {
  if (!(d >= 0.0) || d > p.d_max_bits) {
    throw std::invalid_argument("accuracy_comm: data size outside [0, d_max]");
  }
  return p.beta1 * std::pow(1.0 - d / p.d_max_bits, p.beta2) + p.beta3;
}

double accuracy(double c, double d, const AccuracyParams& p) {
  const double dc = std::min(d, p.d_max_bits);
  return accuracy_comp(c, p) * accuracy_comm(dc, p) / p.beta3;
}

double utility_of_accuracy(double a, UtilityKind kind) {
  if (kind == UtilityKind::ConcaveAccuracy) return a;
  if (a >= 1.0) throw std::domain_error("general utility undefined for accuracy >= 1");
  return 1.0 / (1.0 - a);
}

double utility(double c, double d, const AccuracyParams& p, UtilityKind kind) {
  if (d <= 0.0) return 0.0;
  return utility_of_accuracy(accuracy(c, d, p), kind);
}

SamplingGrid SamplingGrid::full(const AccuracyParams& p, int points) {
  SamplingGrid g;
  g.c_lo = p.c_max_cycles / points;
  g.c_hi = p.c_max_cycles;
  g.d_lo = p.d_max_bits / points;
  g.d_hi = p.d_max_bits;
  g.c_points = points;
  g.d_points = points;
  return g;
}

namespace {

void record(AssumptionCheck& chk, double violation, double tol, double c, double d) {
  if (violation > tol && violation > chk.worst_violation) {
    chk.pass = false;
    chk.worst_violation = violation;
    chk.at_c = c;
    chk.at_d = d;
  }
}

}  // namespace

AssumptionReport validate_assumptions(const AccuracyParams& p, UtilityKind kind,
                                      const SamplingGrid& grid) {
  if (grid.c_points < 3 || grid.d_points < 3 || !(grid.c_lo > 0.0) || grid.c_hi <= grid.c_lo ||
      !(grid.d_lo > 0.0) || grid.d_hi <= grid.d_lo || grid.c_hi > p.c_max_cycles ||
      grid.d_hi > p.d_max_bits) {
    throw std::invalid_argument("validate_assumptions: grid must lie inside (0, C] x (0, D]");
  }
  const int nc = grid.c_points;
  const int nd = grid.d_points;
  const double hc = (grid.c_hi - grid.c_lo) / (nc - 1);
  const double hd = (grid.d_hi - grid.d_lo) / (nd - 1);
  auto cv = [&](int i) { return grid.c_lo + hc * i; };
  auto dv = [&](int j) { return grid.d_lo + hd * j; };
  auto u = [&](double c, double d) { return utility(c, d, p, kind); };

  double scale = 1.0;
  for (int i = 0; i < nc; ++i) scale = std::max(scale, std::abs(u(cv(i), grid.d_hi)));
  const double tol = 1e-12 * scale;

  AssumptionReport rep;
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double c = cv(i);
      const double d = dv(j);
      const double u0 = u(c, d);
      // monotonicity
      if (i + 1 < nc) record(rep.monotone_concave, u0 - u(cv(i + 1), d), tol, c, d);
      if (j + 1 < nd) record(rep.monotone_concave, u0 - u(c, dv(j + 1)), tol, c, d);
      // joint concavity: Hessian of second differences must be negative semidefinite
      if (i > 0 && i + 1 < nc && j > 0 && j + 1 < nd) {
        const double dcc = u(cv(i + 1), d) - 2.0 * u0 + u(cv(i - 1), d);
        const double ddd = u(c, dv(j + 1)) - 2.0 * u0 + u(c, dv(j - 1));
        const double dcd = (u(cv(i + 1), dv(j + 1)) - u(cv(i + 1), dv(j - 1)) -
                            u(cv(i - 1), dv(j + 1)) + u(cv(i - 1), dv(j - 1))) /
                           4.0;
        record(rep.monotone_concave, dcc, tol, c, d);
        record(rep.monotone_concave, ddd, tol, c, d);
        const double det_gap = dcd * dcd - dcc * ddd;
        if (det_gap > 0.0) record(rep.monotone_concave, std::sqrt(det_gap), tol, c, d);
      }
      if (i + 1 < nc && j + 1 < nd) {
        const double cross = u(cv(i + 1), dv(j + 1)) - u(cv(i + 1), d) - u(c, dv(j + 1)) + u0;
        record(rep.compute_supermodular, -cross, tol, c, d);
      }
    }
  }

  // Central differences in d with a step small against the grid spacing.
  const double h = 1e-3 * hd;
  auto du_dd = [&](double c, double d) { return (u(c, d + h) - u(c, d - h)) / (2.0 * h); };
  constexpr std::array<double, 3> alphas{1.5, 2.0, 4.0};
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double c = cv(i);
      const double d = dv(j);
      const double base = du_dd(c, d);
      for (double a : alphas) {
        if (a * d + h > grid.d_hi) continue;
        const double scaled = du_dd(c, a * d);
        // compare in units of utility per grid step so the tolerance is dimensionless
        record(rep.data_scaling, (scaled - base / a) * hd, 1e-9 * scale, c, d);
      }
    }
  }
  return rep;
}

}  // namespace semalloc
