#include "doctest.h"

#include <cmath>
#include <random>

#include "negdep/audit.hpp"
#include "negdep/errors.hpp"
#include "negdep/sampler.hpp"
#include "oracles.hpp"

using namespace negdep;
using namespace negdep::audit;

namespace {

CubeDistribution correlated_pair() {
  // Mass 1/2 on 00 and 1/2 on 11: the canonical positively-correlated pair.
  std::vector<double> probs = {0.5, 0.0, 0.0, 0.5};
  return CubeDistribution(2, std::move(probs));
}

double max_abs_diff(const RectMatrix& a, const RectMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_CASE("psi matrix on stated fixtures") {
  const auto u21 = build_distribution(UniformKScheme{2, 1});
  const auto psi = psi_matrix(u21, 0, 0);
  CHECK(psi(0, 0) == doctest::Approx(1.0));
  CHECK(psi(0, 1) == doctest::Approx(-1.0));
  CHECK(psi(1, 0) == doctest::Approx(-1.0));
  CHECK(psi(1, 1) == doctest::Approx(1.0));

  const auto iid = build_distribution(IidScheme{{0.3, 0.6, 0.2}});
  const auto psi_iid = psi_matrix(iid, 0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(psi_iid(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

  //

  // Zero-probability conditioning pattern: whole matrix zero by convention.
  const auto psi_zero = psi_matrix(u21, 0b11, 0b11);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(psi_zero(i, j) == 0.0);
}

TEST_CASE("iota matrix on stated fixtures") {
  const auto u21 = build_distribution(UniformKScheme{2, 1});
  const auto iota = iota_matrix(u21, 0);
  CHECK(iota(0, 0) == doctest::Approx(0.5));
  CHECK(iota(0, 1) == doctest::Approx(-0.5));
  CHECK(iota(1, 0) == doctest::Approx(-0.5));
  CHECK(iota(1, 1) == doctest::Approx(0.5));

  // Independence kills the off-diagonal; the diagonal is 1 - p_i by the
  // definition (conditioning on X_i = 1 moves its own coordinate).
  const auto iid = build_distribution(IidScheme{{0.3, 0.6}});
  const auto iz = iota_matrix(iid, 0);
  CHECK(iz(0, 0) == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(iz(1, 1) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(std::fabs(iz(0, 1)) < 1e-13);
  CHECK(std::fabs(iz(1, 0)) < 1e-13);

  // Conditioning that pins everything: Dirac conditional, matrix zero.
  const auto u33 = build_distribution(UniformKScheme{3, 2});
  const auto pinned = iota_matrix(u33, 0b011);  // given X_0 = X_1 = 1, X_2 = 0 a.s.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::fabs(pinned(i, j)) < 1e-13);
}

TEST_CASE("psi and iota agree with the direct-summation oracle on 100 random tables") {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 5);  // up to 6
    const auto d = oracles::random_table(gen, n, -1, 0.7);
    const Bitmask lambda = static_cast<Bitmask>(gen()) & ((Bitmask{1} << n) - 1);
    const Bitmask sigma = static_cast<Bitmask>(gen()) & lambda;
    CHECK(max_abs_diff(psi_matrix(d, lambda, sigma), oracles::direct_psi(d, lambda, sigma)) <=
          1e-14);
    CHECK(max_abs_diff(iota_matrix(d, lambda), oracles::direct_iota(d, lambda)) <= 1e-14);
  }
}

TEST_CASE("ell_inf_D on stated fixtures") {
  const auto u21 = build_distribution(UniformKScheme{2, 1});
  const auto one = ell_inf_D(u21, Side::One);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  const auto two = ell_inf_D(u21, Side::Two);
  CHECK(two.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto iid = build_distribution(IidScheme{{0.3, 0.7, 0.5}});
  CHECK(ell_inf_D(iid, Side::Two).value == doctest::Approx(1.0).epsilon(1e-12));

  const auto u42 = build_distribution(UniformKScheme{4, 2});
  const auto two42 = ell_inf_D(u42, Side::Two);
  CHECK(two42.value <= 2.0 + 1e-12);
  CHECK(two42.value == doctest::Approx(2.0).epsilon(1e-12));  // attained at Lambda = empty

  CHECK_THROWS_AS(ell_inf_D(build_distribution(UniformKScheme{13, 2}, 20), Side::One), InputError);
}

TEST_CASE("one-sided D can drop below 1 for near-deterministic iid vectors") {
  const auto d = build_distribution(IidScheme{{0.99, 0.99, 0.99}});
  CHECK(ell_inf_D(d, Side::One).value < 0.1);
}

TEST_CASE("avmax check") {
  const auto u21 = build_distribution(UniformKScheme{2, 1});
  const auto res = avmax_check(u21, 1.0);
  CHECK(res.pass);
  CHECK(res.lhs[0] == doctest::Approx(0.5).epsilon(1e-12));  // equality: D * p_0 = 1/2

  std::vector<double> dirac(1 << 2, 0.0);
  dirac[0b11] = 1.0;
  const auto res_dirac = avmax_check(CubeDistribution(2, std::move(dirac)), 1.0);
  CHECK(res_dirac.pass);
  CHECK(res_dirac.lhs[0] == doctest::Approx(0.0));

  std::mt19937_64 gen(161);
  for (int rep = 0; rep < 50; ++rep) {
    const auto d = oracles::random_table(gen, 5, 2, 0.8);
    const auto big_d = ell_inf_D(d, Side::One);
    CHECK(avmax_check(d, big_d.value).pass);
  }
  CHECK_THROWS_AS(avmax_check(build_distribution(IidScheme{{0.5, 0.5}}), 1.0), InputError);
}

TEST_CASE("na audit") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k) CHECK(na_audit(build_distribution(UniformKScheme{n, k})).pass);

  CHECK(na_audit(build_distribution(IidScheme{{0.3, 0.8, 0.5}})).pass);

  const auto bad = na_audit(correlated_pair());
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->block == 0b01);
  REQUIRE(bad.witness->upper_i.size() == 1);
  CHECK(bad.witness->upper_i[0] == 1);   // pattern {X_0 = 1}
  REQUIRE(bad.witness->upper_ic.size() == 1);
  CHECK(bad.witness->upper_ic[0] == 1);  // pattern {X_1 = 1}
  CHECK(bad.witness->covariance == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("scp audit") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k) CHECK(scp_audit(build_distribution(UniformKScheme{n, k})).pass);

  const auto bad = scp_audit(correlated_pair());
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness.has_value());
  CHECK(std::popcount(bad.witness->lambda) == 1);
  // Conditionals given X_Lambda = 1 and X_Lambda = 0 are Dirac at 1 and 0 on
  // the other coordinate; 0 does not cover 1.
  CHECK((bad.witness->x_pattern ^ bad.witness->y_pattern) == 1);

  std::vector<double> dirac(1 << 3, 0.0);
  dirac[0b110] = 1.0;
  CHECK(scp_audit(CubeDistribution(3, std::move(dirac))).pass);
}

TEST_CASE("rayleigh spot check") {
  const auto iid = build_distribution(IidScheme{{0.4, 0.7}});
  CHECK(rayleigh_spot_check(iid, default_rayleigh_points(2, RayleighDomain::NonNegative)).pass);

  const auto u21 = build_distribution(UniformKScheme{2, 1});
  CHECK(rayleigh_spot_check(u21, {{1.0, 1.0}}).pass);

  // F = (1 + x0 x1)/2 at the origin: F * d2F = 1/4 > 0 = dF dF.
  const auto bad = rayleigh_spot_check(correlated_pair(), {{0.0, 0.0}});
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->lhs == doctest::Approx(0.25));
  CHECK(bad.witness->rhs == doctest::Approx(0.0));
}

TEST_CASE("homogenization relates two-sided and one-sided D by a factor of 2") {
  std::mt19937_64 gen(404);
  for (int rep = 0; rep < 20; ++rep) {
    const auto d = oracles::random_table(gen, 3, -1, 0.8);
    const double two = ell_inf_D(d, Side::Two).value;
    const double one_h = ell_inf_D(d.homogenized(), Side::One).value;
    CHECK(one_h <= 2.0 * two + 1e-12);
  }
}

TEST_CASE("run_audit assembles a coherent report on uniform_k(4,2)") {
  const auto rep = run_audit(build_distribution(UniformKScheme{4, 2}));
  REQUIRE(rep.one_sided.has_value());
  REQUIRE(rep.two_sided.has_value());
  CHECK(rep.one_sided->value >= 1.0 - 1e-12);
  CHECK(rep.one_sided->value <= rep.two_sided->value + 1e-12);
  CHECK(rep.two_sided->value <= 2.0 + 1e-12);
  CHECK(rep.na->pass);
  CHECK(rep.scp->pass);
  CHECK(rep.rayleigh->pass);
  for (const auto& [name, ok] : rep.lemma_checks) {
    INFO(name);
    CHECK(ok);
  }
}

TEST_CASE("D maximization is independent of the thread count") {
  std::mt19937_64 gen(7171);
  for (int rep = 0; rep < 5; ++rep) {
    const auto d = oracles::random_table(gen, 6, -1, 0.6);
    AuditCaps seq;
    AuditCaps par;
    par.threads = 4;
    for (Side side : {Side::One, Side::Two}) {
      const auto a = ell_inf_D(d, side, seq);
      const auto b = ell_inf_D(d, side, par);
      CHECK(a.value == b.value);
      CHECK(a.lambda == b.lambda);
      CHECK(a.sigma == b.sigma);
      CHECK(a.row == b.row);
    }
  }
}

TEST_CASE("audit caps raise errors") {
  const auto d = build_distribution(UniformKScheme{11, 2}, 20);
  CHECK_THROWS_AS(ell_inf_D(d, Side::Two), InputError);
  CHECK_THROWS_AS(na_audit(d), InputError);
  CHECK_THROWS_AS(scp_audit(d), InputError);
}

TEST_CASE("na audit exercises the closure path on seven coordinates") {
  // Partitions of n = 7 put up to 6 coordinates on the larger side, which is
  // maximized by min-cut rather than enumeration.
  CHECK(na_audit(build_distribution(UniformKScheme{7, 3})).pass);

  // Correlated pair on coordinates (0,6) tensored with iid noise in between:
  // the worst (U, V) lives across the largest partition.
  std::vector<double> probs(1 << 7, 0.0);
  const double fifth = 1.0 / 32.0;
  for (Bitmask mid = 0; mid < (1 << 5); ++mid) {
    probs[static_cast<std::size_t>(mid << 1)] += 0.5 * fifth;                   // X0 = X6 = 0
    probs[static_cast<std::size_t>((mid << 1) | 1 | (1 << 6))] += 0.5 * fifth;  // X0 = X6 = 1
  }
  const CubeDistribution d(7, std::move(probs));
  const auto res = na_audit(d);
  CHECK_FALSE(res.pass);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->covariance == doctest::Approx(0.25).epsilon(1e-10));
}
