#include "negdep/stats.hpp"

#include <cmath>
#include <limits>

#include "negdep/errors.hpp"

namespace negdep::stats {

namespace {

// Series expansion of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw InputError("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double beta_inc(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw InputError("beta_inc: need a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

namespace {

// Inverts a nondecreasing cdf by bisection on [lo, hi].
template <typename Cdf>
double invert_cdf(Cdf cdf, double p, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double beta_quantile(double p, double a, double b) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return invert_cdf([&](double x) { return beta_inc(a, b, x); }, p, 0.0, 1.0);
}

}  // namespace

double chi2_quantile(double p, double df) {
  if (df <= 0.0) throw InputError("chi2_quantile: df must be > 0");
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  double hi = df + 10.0 * std::sqrt(2.0 * df) + 10.0;
  while (gamma_p(df / 2.0, hi / 2.0) < p) hi *= 2.0;
  return invert_cdf([&](double x) { return gamma_p(df / 2.0, x / 2.0); }, p, 0.0, hi);
}

Interval clopper_pearson(std::uint64_t k, std::uint64_t n, double alpha) {
  if (n == 0 || k > n) throw InputError("clopper_pearson: need 0 <= k <= n, n >= 1");
  if (alpha <= 0.0 || alpha >= 1.0) throw InputError("clopper_pearson: alpha in (0,1)");
  Interval out;
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  if (k > 0) out.lo = beta_quantile(alpha / 2.0, kd, nd - kd + 1.0);
  if (k < n) out.hi = beta_quantile(1.0 - alpha / 2.0, kd + 1.0, nd - kd);
  return out;
}

Chi2Result chi2_goodness_of_fit(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected_probs, double alpha) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw InputError("chi2_goodness_of_fit: size mismatch");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  if (total == 0) throw InputError("chi2_goodness_of_fit: no observations");
  Chi2Result out;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expect = expected_probs[i] * static_cast<double>(total);
    if (expect <= 0.0) {
      if (observed[i] != 0)
        out.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    ++cells;
    const double diff = static_cast<double>(observed[i]) - expect;
    out.statistic += diff * diff / expect;
  }
  out.df = cells - 1;
  out.threshold = chi2_quantile(1.0 - alpha, static_cast<double>(out.df));
  out.pass = out.statistic <= out.threshold;
  return out;
}

}  // namespace negdep::stats
