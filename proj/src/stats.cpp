#include "vidflux/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vidflux {

namespace {

// Lentz's algorithm for the incomplete beta continued fraction.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 2000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// -log B(a, b). The naive lgamma(a+b) - lgamma(a) - lgamma(b) loses ~a*ln(a)*eps
// absolute precision when one parameter is huge, which is exactly the t-CDF
// regime (a = df/2); switch to the ratio expansion
// Gamma(h+l)/Gamma(h) = h^l (1 + l(l-1)/(2h) + l(l-1)(l-2)(3l-1)/(24h^2) + ...)
// when the small parameter is <= 2.
double neg_log_beta(double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (hi >= 1e5 && lo <= 2.0) {
    const double c1 = lo * (lo - 1.0) / (2.0 * hi);
    const double c2 = lo * (lo - 1.0) * (lo - 2.0) * (3.0 * lo - 1.0) / (24.0 * hi * hi);
    return lo * std::log(hi) + std::log1p(c1 + c2) - std::lgamma(lo);
  }
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete_beta: a and b must be > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("incomplete_beta: x must be in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = neg_log_beta(a, b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, double df) {
  if (!(df >= 1.0)) throw std::invalid_argument("t_cdf: df must be >= 1");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(x, 0.5 * df, 0.5);
  return t > 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("t_quantile: p must be in (0, 1)");
  if (p == 0.5) return 0.0;
  // Exploit antisymmetry; solve in the upper tail.
  if (p < 0.5) return -t_quantile(1.0 - p, df);

  double lo = 0.0, hi = 1.0;
  while (t_cdf(hi, df) < p) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, lo)) break;
  }
  return 0.5 * (lo + hi);
}

DiffSeries diff_series(const TpSeries& a, const TpSeries& b) {
  if (a.size() != b.size()) {
    throw AlignmentError("diff_series: series lengths differ (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) {
    throw AlignmentError("diff_series: need at least 2 paired frames");
  }
  DiffSeries d;
  d.d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.d.push_back(static_cast<double>(b.tp[i]) - static_cast<double>(a.tp[i]));
  }
  return d;
}

PairedTestReport paired_t_test(const DiffSeries& d, double alpha,
                               std::optional<double> baseline_mean) {
  if (d.n() < 2) throw AlignmentError("paired_t_test: need n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("paired_t_test: alpha must be in (0, 1)");
  }

  PairedTestReport r;
  const auto n = static_cast<double>(d.n());
  r.df = static_cast<std::int64_t>(d.n()) - 1;
  r.alpha = alpha;
  r.mean_diff = mean_of(d.d);

  double ss = 0.0;
  for (double x : d.d) ss += (x - r.mean_diff) * (x - r.mean_diff);
  const double var = ss / (n - 1.0);  // sample variance
  r.sd_diff = std::sqrt(var);

  if (r.sd_diff == 0.0) {
    // All difference scores identical: no-effect degenerate at mean 0,
    // certain effect otherwise.
    r.ci_low = r.ci_high = r.mean_diff;
    if (r.mean_diff == 0.0) {
      r.t_stat = 0.0;
      r.p_two_sided = 1.0;
      r.reject_null = false;
    } else {
      r.t_stat = r.mean_diff > 0.0 ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
      r.p_two_sided = 0.0;
      r.reject_null = true;
      r.degenerate = true;
    }
  } else {
    const double se = r.sd_diff / std::sqrt(n);
    r.t_stat = r.mean_diff / se;
    const double cdf = t_cdf(r.t_stat, static_cast<double>(r.df));
    r.p_two_sided = 2.0 * std::min(cdf, 1.0 - cdf);
    r.reject_null = r.p_two_sided < alpha;
    const double t_crit = t_quantile(1.0 - alpha / 2.0, static_cast<double>(r.df));
    r.ci_low = r.mean_diff - t_crit * se;
    r.ci_high = r.mean_diff + t_crit * se;
  }

  if (baseline_mean.has_value() && *baseline_mean != 0.0) {
    r.relative_effect = r.mean_diff / *baseline_mean;
  }
  return r;
}

}  // namespace vidflux
