#pragma once

#include <cstdint>
#include <vector>

namespace negdep::stats {

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

// Quantile of the chi-squared distribution with df degrees of freedom.
double chi2_quantile(double p, double df);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Exact (Clopper-Pearson) two-sided confidence interval at level 1 - alpha
// for a binomial proportion with k successes out of n.
Interval clopper_pearson(std::uint64_t k, std::uint64_t n, double alpha);

struct Chi2Result {
  double statistic = 0.0;
  double threshold = 0.0;  // quantile at 1 - alpha, df = #cells - 1
  int df = 0;
  bool pass = false;       // statistic <= threshold
};

// Pearson goodness-of-fit of observed counts against expected probabilities.
// Cells with zero expected probability must have zero observed count.
Chi2Result chi2_goodness_of_fit(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected_probs, double alpha);

}  // namespace negdep::stats
