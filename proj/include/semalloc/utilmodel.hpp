#pragma once

#include <string>

namespace semalloc {

enum class LogBase { Natural, Ten };

// Curve-fit parameters of one semantic application.
//   A_c = eta1 * log(c / c_max) + eta2
//   A_d = beta1 * (1 - d / d_max)^beta2 + beta3
//   A   = A_c * A_d / beta3
struct AccuracyParams {
  double eta1 = 0.065;
  double eta2 = 0.925;
  double c_max_cycles = 7.5e6;
  double beta1 = -0.7;
  double beta2 = 15.0;
  double beta3 = 0.925;
  double d_max_bits = 2.0e5;
  double raw_data_bits = 6.0e5;  // only the traditional-communication baseline reads this
  LogBase log_base = LogBase::Natural;

  bool operator==(const AccuracyParams&) const = default;
};

// Throws std::invalid_argument naming the first broken invariant.
void check(const AccuracyParams& p);

enum class UtilityKind { ConcaveAccuracy, GeneralReciprocal };

std::string to_string(UtilityKind kind);
UtilityKind utility_kind_from_string(const std::string& s);

// c is clamped to c_max; rejects c <= 0. Result floored at 0.
double accuracy_comp(double c, const AccuracyParams& p);
// Rejects d outside [0, d_max].
double accuracy_comm(double d, const AccuracyParams& p);
// Joint accuracy after clamping c and d to their maxima. Requires c > 0, d >= 0.
double accuracy(double c, double d, const AccuracyParams& p);

double utility_of_accuracy(double a, UtilityKind kind);

// u(c, 0) is 0 for every c: nothing delivered means no result.
double utility(double c, double d, const AccuracyParams& p, UtilityKind kind);

// Rectangle of (c, d) sample points used by validate_assumptions.
struct SamplingGrid {
  double c_lo = 0.0;
  double c_hi = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
  int c_points = 50;
  int d_points = 50;

  // Covers (0, c_max] x (0, d_max] without touching the c = 0 / d = 0 edges.
  static SamplingGrid full(const AccuracyParams& p, int points = 50);
};

struct AssumptionCheck {
  bool pass = true;
  double worst_violation = 0.0;  // 0 when pass
  double at_c = 0.0;
  double at_d = 0.0;
};

struct AssumptionReport {
  AssumptionCheck monotone_concave;     // non-decreasing and jointly concave
  AssumptionCheck compute_supermodular; // du/dc non-decreasing in d
  AssumptionCheck data_scaling;         // du/dd(c, a*d) <= du/dd(c, d) / a
};

// Samples finite differences over the grid. Reports instead of throwing since
// these properties hold only approximately for the fitted curves.
AssumptionReport validate_assumptions(const AccuracyParams& p, UtilityKind kind,
                                      const SamplingGrid& grid);

}  // namespace semalloc
