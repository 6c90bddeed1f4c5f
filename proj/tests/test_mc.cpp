#include "doctest.h"

#include <cmath>
#include <random>

#include "negdep/errors.hpp"
#include "negdep/linalg.hpp"
#include "negdep/montecarlo.hpp"
#include "negdep/sampler.hpp"
#include "oracles.hpp"

using namespace negdep;
using namespace negdep::mc;

namespace {

bool reports_identical(const TailReport& a, const TailReport& b) {
  return a.t_grid == b.t_grid && a.estimate == b.estimate && a.ci_lo == b.ci_lo &&
         a.ci_hi == b.ci_hi && a.counts == b.counts && a.center_norm == b.center_norm;
}

}  // namespace

TEST_CASE("t_grid excludes the left endpoint") {
  const auto ts = t_grid(0.0, 1.0, 4);
  REQUIRE(ts.size() == 4);
  CHECK(ts.front() == doctest::Approx(0.25));
  CHECK(ts.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(t_grid(1.0, 1.0, 4), InputError);
}

TEST_CASE("exact_tail: Dirac step function") {
  std::vector<double> probs(1 << 2, 0.0);
  probs[0b11] = 1.0;
  const CubeDistribution d(2, std::move(probs));
  std::vector<SymMatrix> a = {SymMatrix::identity(1), SymMatrix::identity(1)};
  const StatisticSpec stat{LinearStatistic{a}};
  const auto raw = exact_tail(d, stat, t_grid(0.0, 4.0, 8), TailMode::Raw);
  for (std::size_t i = 0; i < raw.t_grid.size(); ++i)
    CHECK(raw.estimate[i] == (raw.t_grid[i] <= 2.0 ? 1.0 : 0.0));
  // Centered: the statistic is deterministic, so the tail vanishes.
  const auto centered = exact_tail(d, stat, t_grid(0.0, 1.0, 4), TailMode::Centered);
  for (double e : centered.estimate) CHECK(e == 0.0);
}

TEST_CASE("exact_tail: two-point symmetric example") {
  const auto d = build_distribution(UniformKScheme{2, 1});
  std::vector<SymMatrix> a = {SymMatrix::identity(1), SymMatrix(1)};
  const auto rep = exact_tail(d, StatisticSpec{LinearStatistic{a}},
                              {0.1, 0.25, 0.5, 0.500000001, 0.75}, TailMode::Centered);
  CHECK(rep.estimate[0] == doctest::Approx(1.0));
  CHECK(rep.estimate[1] == doctest::Approx(1.0));
  CHECK(rep.estimate[2] == doctest::Approx(1.0));  // ||Z - EZ|| == 1/2 exactly
  CHECK(rep.estimate[3] == doctest::Approx(0.0));
  CHECK(rep.estimate[4] == doctest::Approx(0.0));
  CHECK(rep.center_norm == doctest::Approx(0.5));
}

TEST_CASE("exact_tail is independent of the thread count") {
  std::mt19937_64 gen(5150);
  const auto d = oracles::random_table(gen, 6, 3);
  std::vector<SymMatrix> a;
  for (int i = 0; i < 6; ++i) a.push_back(oracles::random_sym(gen, 3));
  const StatisticSpec stat{LinearStatistic{a}};
  const auto ts = t_grid(0.0, 3.0, 64);
  const auto r1 = exact_tail(d, stat, ts, TailMode::Centered, 1);
  const auto r4 = exact_tail(d, stat, ts, TailMode::Centered, 4);
  CHECK(reports_identical(r1, r4));
}

TEST_CASE("mc_tail determinism and exactness contracts") {
  const SamplerSpec spec = UniformKScheme{6, 3};
  std::mt19937_64 gen(808);
  std::vector<SymMatrix> a;
  for (int i = 0; i < 6; ++i) a.push_back(oracles::random_sym(gen, 2));
  const StatisticSpec stat{LinearStatistic{a}};
  const auto ts = t_grid(0.0, 2.5, 40);

  RunConfig cfg;
  cfg.n = 20000;
  cfg.seed = 17;
  cfg.threads = 1;
  const auto r1 = mc_tail(spec, stat, ts, cfg, TailMode::Centered);
  cfg.threads = 4;
  const auto r4 = mc_tail(spec, stat, ts, cfg, TailMode::Centered);
  CHECK(reports_identical(r1, r4));

  // Against the exact tail: every point inside the CP interval. The centered
  // mc run subtracts an estimated mean, so compare in raw mode.
  const auto raw_mc = mc_tail(spec, stat, ts, cfg, TailMode::Raw);
  const auto exact = exact_tail(build_distribution(UniformKScheme{6, 3}), stat, ts, TailMode::Raw);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(exact.estimate[i] >= raw_mc.ci_lo[i] - 1e-12);
    CHECK(exact.estimate[i] <= raw_mc.ci_hi[i] + 1e-12);
  }
}

TEST_CASE("Clopper-Pearson coverage on a known Bernoulli statistic") {
  // X ~ Bernoulli(0.3), statistic = X; the tail at t = 0.5 is exactly 0.3.
  const SamplerSpec spec = IidScheme{{0.3}};
  const StatisticSpec stat{LinearStatistic{{SymMatrix::identity(1)}}};
  const std::vector<double> ts = {0.5};
  int covered = 0;
  RunConfig cfg;
  cfg.n = 10000;
  cfg.alpha = 0.001;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    cfg.seed = 9000 + trial;
    const auto rep = mc_tail(spec, stat, ts, cfg, TailMode::Raw);
    if (rep.ci_lo[0] <= 0.3 && 0.3 <= rep.ci_hi[0]) ++covered;
  }
  CHECK(covered >= 999);
}

TEST_CASE("decoupling identities on stated fixtures") {
  // Scalar c_01 = c_10 = 1 and the Dirac mass at (1,1):
  // E(sum c_ij X_i X_j delta_i(1-delta_j) | X) = 1/2 = (1/4) * 2.
  RectMatrix c(2, 2);
  c(0, 1) = 1.0;
  c(1, 0) = 1.0;
  std::vector<double> probs(1 << 2, 0.0);
  probs[0b11] = 1.0;
  const CubeDistribution dirac(2, std::move(probs));
  RunConfig cfg;
  cfg.n = 2000;
  cfg.seed = 5;
  const auto rep = decoupling_check(dirac, scalar_coeffs(c), t_grid(0.0, 3.0, 10), cfg);
  CHECK(rep.identity_quarter_pass);
  CHECK(rep.identity_quarter_dev <= 1e-12);
  CHECK(rep.identity_conditioning_pass);
  CHECK(rep.monotone_checked);
  CHECK(rep.monotone);
  CHECK(rep.homogeneous);

  const auto u42 = build_distribution(UniformKScheme{4, 2});
  std::mt19937_64 gen(2001);
  SymMatrix h = oracles::random_sym(gen, 4, 1.0);
  for (int i = 0; i < 4; ++i) h.set(i, i, 0.0);
  cfg.n = 20000;
  const auto rep2 = decoupling_check(u42, submatrix_coeffs(h), t_grid(0.0, 2.0, 20), cfg);
  CHECK(rep2.identity_quarter_pass);
  CHECK(rep2.identity_conditioning_pass);
  CHECK(rep2.monotone);  // adding rows/columns cannot decrease the norm
  REQUIRE(rep2.smallest_c0.has_value());
  CHECK(*rep2.smallest_c0 <= 32.0);
}

TEST_CASE("decoupling conditioning identity fails without homogeneity") {
  // Bernoulli product measure is not homogeneous; the delta-conditioning
  // identity relies on the constant weight 2^-k and must break.
  const auto iid = build_distribution(IidScheme{{0.3, 0.8}});
  RectMatrix c(2, 2);
  c(0, 1) = 1.0;
  c(1, 0) = 1.0;
  RunConfig cfg;
  cfg.n = 500;
  const auto rep = decoupling_check(iid, scalar_coeffs(c), t_grid(0.0, 1.0, 4), cfg);
  CHECK_FALSE(rep.homogeneous);
  CHECK_FALSE(rep.identity_conditioning_pass);
  CHECK(rep.identity_quarter_pass);  // pointwise identity needs no homogeneity
}

TEST_CASE("decoupling monotonicity violation is detected") {
  RectMatrix c(3, 3);
  c(0, 1) = 1.0;
  c(1, 0) = 1.0;
  c(0, 2) = -1.0;
  c(2, 0) = -1.0;
  const auto u = build_distribution(UniformKScheme{3, 1});
  RunConfig cfg;
  cfg.n = 500;
  const auto rep = decoupling_check(u, scalar_coeffs(c), t_grid(0.0, 1.0, 4), cfg);
  CHECK(rep.monotone_checked);
  CHECK_FALSE(rep.monotone);
  CHECK(rep.monotone_witness.has_value());
  // Hypothesis violation does not block the exact identities.
  CHECK(rep.identity_quarter_pass);
  CHECK(rep.identity_conditioning_pass);
}

TEST_CASE("decoupling coefficient validation") {
  RectMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  const auto u = build_distribution(UniformKScheme{2, 1});
  RunConfig cfg;
  CHECK_THROWS_AS(decoupling_check(u, scalar_coeffs(bad), t_grid(0.0, 1.0, 2), cfg), InputError);
}

TEST_CASE("submatrix experiment") {
  RunConfig cfg;
  cfg.n = 5000;
  cfg.seed = 77;

  // H = 0: the tail vanishes identically.
  const auto zero_rep = submatrix_experiment(SymMatrix(4), SamplerSpec{UniformKScheme{4, 2}},
                                             t_grid(0.0, 1.0, 5), cfg);
  for (double e : zero_rep.tail.estimate) CHECK(e == 0.0);
  CHECK(zero_rep.exact_inclusion);

  // J - I with uniform_k(8,4): empirical tail within the CP band of the
  // exact enumeration.
  SymMatrix h(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j) h.set(i, j, 1.0);
  const SamplerSpec spec = UniformKScheme{8, 4};
  const auto ts = t_grid(0.0, 4.0, 25);
  cfg.n = 20000;
  const auto rep = submatrix_experiment(h, spec, ts, cfg);
  const auto exact = exact_tail(build_distribution(UniformKScheme{8, 4}),
                                StatisticSpec{SubmatrixStatistic{h}}, ts, TailMode::Raw);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(exact.estimate[i] >= rep.tail.ci_lo[i] - 1e-12);
    CHECK(exact.estimate[i] <= rep.tail.ci_hi[i] + 1e-12);
  }
  for (int i = 0; i < 8; ++i) CHECK(rep.inclusion[static_cast<std::size_t>(i)] == doctest::Approx(0.5));

  // Same seed, different thread count: identical report.
  cfg.threads = 3;
  const auto rep_threads = submatrix_experiment(h, spec, ts, cfg);
  CHECK(reports_identical(rep.tail, rep_threads.tail));
  CHECK(rep.tail.bound == rep_threads.tail.bound);
}

TEST_CASE("decoupling coupled tail matches exact enumeration within the CP band") {
  const auto d = build_distribution(UniformKScheme{4, 2});
  std::mt19937_64 gen(909);
  SymMatrix h = oracles::random_sym(gen, 4, 1.0);
  for (int i = 0; i < 4; ++i) h.set(i, i, 0.0);
  const auto coeffs = submatrix_coeffs(h);
  const auto ts = t_grid(0.0, 2.0, 30);
  RunConfig cfg;
  cfg.n = 20000;
  cfg.seed = 4711;
  const auto rep = decoupling_check(d, coeffs, ts, cfg);

  // Exact coupled tail by enumeration of the table.
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double exact = 0.0;
    for (Bitmask x = 0; x < (Bitmask{1} << 4); ++x) {
      if (d.prob(x) == 0.0) continue;
      RectMatrix acc(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (a != b && ((x >> a) & 1) && ((x >> b) & 1)) acc(a, b) = h(a, b);
      if (spectral_norm(acc) >= ts[i]) exact += d.prob(x);
    }
    CHECK(exact >= rep.coupled.ci_lo[i] - 1e-12);
    CHECK(exact <= rep.coupled.ci_hi[i] + 1e-12);
  }
}

TEST_CASE("submatrix experiment empirical-inclusion fallback") {
  SymMatrix h(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) h.set(i, j, 1.0);
  RunConfig cfg;
  cfg.n = 20000;
  cfg.seed = 99;
  const auto rep = submatrix_experiment(h, SamplerSpec{UniformKScheme{6, 3}},
                                        t_grid(0.0, 3.0, 10), cfg, 35.0, 1.0,
                                        /*table_cap=*/4);
  CHECK_FALSE(rep.exact_inclusion);
  for (double p : rep.inclusion) CHECK(p == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("centered mc_tail centers on the table mean when one exists") {
  const SamplerSpec spec = UniformKScheme{5, 2};
  std::mt19937_64 gen(141);
  std::vector<SymMatrix> a;
  for (int i = 0; i < 5; ++i) a.push_back(oracles::random_sym(gen, 2));
  const StatisticSpec stat{LinearStatistic{a}};
  RunConfig cfg;
  cfg.n = 4000;
  cfg.seed = 21;
  const auto ts = t_grid(0.0, 2.0, 10);
  const auto rep = mc_tail(spec, stat, ts, cfg, TailMode::Centered);
  CHECK(rep.center_exact);
  const auto exact = exact_tail(build_distribution(UniformKScheme{5, 2}), stat, ts,
                                TailMode::Centered);
  CHECK(rep.center_norm == doctest::Approx(exact.center_norm).epsilon(1e-12));
  // With a cap below n, the center falls back to the recorded estimate.
  const auto est = mc_tail(spec, stat, ts, cfg, TailMode::Centered, /*table_cap=*/3);
  CHECK_FALSE(est.center_exact);
  CHECK(est.center_norm != rep.center_norm);
}
