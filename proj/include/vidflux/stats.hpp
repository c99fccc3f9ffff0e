#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vidflux/types.hpp"

namespace vidflux {

// Regularized incomplete beta function I_x(a, b) for x in [0,1], a,b > 0.
// Continued-fraction evaluation with the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
// applied when x > (a+1)/(a+b+2).
double incomplete_beta(double x, double a, double b);

// Student-t CDF via I_x(df/2, 1/2) with x = df/(df + t^2).
double t_cdf(double t, double df);

// Inverse of t_cdf in t for p in (0, 1); bisection on the monotone CDF.
double t_quantile(double p, double df);

// Pairwise difference scores D = B - A, aligned by position.
struct DiffSeries {
  std::vector<double> d;
  std::size_t n() const { return d.size(); }
};

DiffSeries diff_series(const TpSeries& a, const TpSeries& b);

// Repeated-measures t-test report for a difference-score series against a
// zero-mean null, with the (1 - alpha) confidence interval of the mean
// difference as the effect size.
struct PairedTestReport {
  double t_stat = 0.0;
  std::int64_t df = 0;
  double p_two_sided = 1.0;
  double alpha = 0.01;
  bool reject_null = false;  // p_two_sided < alpha
  double mean_diff = 0.0;
  double sd_diff = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> relative_effect;  // mean_diff / baseline mean, if defined
  bool degenerate = false;                // sd == 0 with nonzero mean
};

// baseline_mean is the mean of the baseline series A (for the relative
// effect); pass nullopt or 0 when it does not apply.
PairedTestReport paired_t_test(const DiffSeries& d, double alpha = 0.01,
                               std::optional<double> baseline_mean = std::nullopt);

}  // namespace vidflux
