#include "doctest.h"

#include "negdep/errors.hpp"
#include "negdep/stats.hpp"

using namespace negdep;

// Reference values: scipy.special.gammainc / betainc, scipy.stats.chi2.ppf,
// scipy.stats.beta.ppf (Clopper-Pearson form).
TEST_CASE("incomplete gamma and beta") {
  CHECK(stats::gamma_p(2.5, 3.0) == doctest::Approx(0.69378108158672125).epsilon(1e-12));
  CHECK(stats::gamma_p(0.5, 0.0) == 0.0);
  CHECK(stats::beta_inc(3.5, 2.0, 0.3) == doctest::Approx(0.051020356231606209).epsilon(1e-12));
  CHECK(stats::beta_inc(2.0, 2.0, 0.0) == 0.0);
  CHECK(stats::beta_inc(2.0, 2.0, 1.0) == 1.0);
}

TEST_CASE("chi-squared quantiles") {
  CHECK(stats::chi2_quantile(0.999, 1) == doctest::Approx(10.827566170662733).epsilon(1e-10));
  CHECK(stats::chi2_quantile(0.999, 3) == doctest::Approx(16.266236196238129).epsilon(1e-10));
  CHECK(stats::chi2_quantile(0.999, 15) == doctest::Approx(37.697298218353829).epsilon(1e-10));
  CHECK(stats::chi2_quantile(0.999, 63) == doctest::Approx(103.44237731987324).epsilon(1e-10));
  CHECK(stats::chi2_quantile(0.999, 255) == doctest::Approx(330.51974363400586).epsilon(1e-10));
  CHECK(stats::chi2_quantile(0.99, 15) == doctest::Approx(30.577914166892491).epsilon(1e-10));
  CHECK_THROWS_AS(stats::chi2_quantile(0.5, 0), InputError);
}

TEST_CASE("Clopper-Pearson intervals") {
  auto iv = stats::clopper_pearson(30, 100, 0.001);
  CHECK(iv.lo == doctest::Approx(0.16373038615626823).epsilon(1e-9));
  CHECK(iv.hi == doctest::Approx(0.46668642054484322).epsilon(1e-9));

  iv = stats::clopper_pearson(0, 100, 0.001);
  CHECK(iv.lo == 0.0);
  CHECK(iv.hi == doctest::Approx(0.073192157544171063).epsilon(1e-9));

  iv = stats::clopper_pearson(100, 100, 0.001);
  CHECK(iv.lo == doctest::Approx(0.92680784245582992).epsilon(1e-9));
  CHECK(iv.hi == 1.0);

  iv = stats::clopper_pearson(17, 100000, 0.001);
  CHECK(iv.lo == doctest::Approx(6.5898439722173968e-05).epsilon(1e-8));
  CHECK(iv.hi == doctest::Approx(0.0003529080675780447).epsilon(1e-8));

  iv = stats::clopper_pearson(50000, 100000, 0.001);
  CHECK(iv.lo == doctest::Approx(0.49479237462765718).epsilon(1e-10));
  CHECK(iv.hi == doctest::Approx(0.50520762537234287).epsilon(1e-10));

  iv = stats::clopper_pearson(3, 50, 0.05);
  CHECK(iv.lo == doctest::Approx(0.012548587835334061).epsilon(1e-9));
  CHECK(iv.hi == doctest::Approx(0.16548194660377288).epsilon(1e-9));

  CHECK_THROWS_AS(stats::clopper_pearson(5, 4, 0.05), InputError);
}

TEST_CASE("chi-squared goodness of fit") {
  // Perfect fit passes comfortably.
  std::vector<std::uint64_t> obs = {250, 250, 250, 250};
  std::vector<double> expect = {0.25, 0.25, 0.25, 0.25};
  auto res = stats::chi2_goodness_of_fit(obs, expect, 0.001);
  CHECK(res.pass);
  CHECK(res.df == 3);
  CHECK(res.statistic == doctest::Approx(0.0));

  // Gross mismatch fails.
  obs = {900, 50, 25, 25};
  res = stats::chi2_goodness_of_fit(obs, expect, 0.001);
  CHECK_FALSE(res.pass);

  // Mass on a zero-probability cell is an automatic fail.
  obs = {500, 500, 0, 1};
  expect = {0.5, 0.5, 0.0, 0.0};
  res = stats::chi2_goodness_of_fit(obs, expect, 0.001);
  CHECK_FALSE(res.pass);
}
