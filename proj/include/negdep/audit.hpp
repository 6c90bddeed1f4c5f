#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "negdep/cube_distribution.hpp"
#include "negdep/matrix.hpp"

namespace negdep::audit {

// Conditional-influence matrix Psi^{Lambda,sigma}: entry (i,j) is
// P(X_j=1 | X_i=1, X_Lambda=sigma) - P(X_j=1 | X_i=0, X_Lambda=sigma),
// with row i zeroed whenever either conditioning event has probability 0.
RectMatrix psi_matrix(const CubeDistribution& d, Bitmask lambda, Bitmask sigma);

// One-sided variant I^Lambda: entry (i,j) is
// P(X_j=1 | X_i=1, X_Lambda=1) - P(X_j=1 | X_Lambda=1), zero convention as
// above.
RectMatrix iota_matrix(const CubeDistribution& d, Bitmask lambda);

enum class Side { One, Two };

struct DependenceValue {
  double value = 0.0;
  Bitmask lambda = 0;
  Bitmask sigma = 0;  // all-ones pattern for the one-sided case
  int row = -1;
};

struct AuditCaps {
  int one_sided = 12;
  int two_sided = 10;
  int na = 10;
  int scp = 10;
  int rayleigh = 15;
  int threads = 1;  // D maximization parallelizes over Lambda blocks
};

// Max over all conditioning sets (and patterns, two-sided) of the
// linf->linf norm, with the maximizing (Lambda, sigma, row).
DependenceValue ell_inf_D(const CubeDistribution& d, Side side, const AuditCaps& caps = {});

struct AvMaxResult {
  bool pass = false;
  std::vector<double> lhs;      // per i: sum_v P(X_v=1)|P(X_i=1|X_v=1) - P(X_i=1)|
  std::vector<double> margins;  // D*p_i + tol - lhs_i
};

// Averaged-deviation check: lhs_i <= D * P(X_i=1) + tol for homogeneous d.
AvMaxResult avmax_check(const CubeDistribution& d, double big_d, double tol = 1e-10);

struct NaWitness {
  Bitmask block;                     // coordinate set I
  std::vector<Bitmask> upper_i;      // upper set of patterns on I
  std::vector<Bitmask> upper_ic;     // upper set of patterns on I^c
  double covariance = 0.0;
};

struct NaResult {
  bool pass = false;
  std::optional<NaWitness> witness;
};

// Negative association over indicator pairs of upper sets: for every
// partition (I, I^c) and upper sets U, V, Cov(1_U(X_I), 1_V(X_{I^c})) <=
// 1e-12. Upper sets on the smaller block are enumerated (monotone-function
// recursion, block <= 5); the larger block is maximized exactly as a
// max-weight-closure (min-cut) problem, so no enumeration cap binds there.
// Indicator pairs suffice: monotone functions are nonnegative combinations
// of upper-set indicators plus constants, and covariance is bilinear.
NaResult na_audit(const CubeDistribution& d, const AuditCaps& caps = {});

struct ScpWitness {
  Bitmask lambda = 0;
  Bitmask x_pattern = 0;  // covers y_pattern
  Bitmask y_pattern = 0;
};

struct ScpResult {
  bool pass = false;
  std::optional<ScpWitness> witness;
};

// Stochastic covering property: for every Lambda and positive-probability
// covering pair x_Lambda > y_Lambda, a coupling of the conditional laws
// supported on the covering relation exists iff the induced transportation
// problem is feasible (max-flow value 1).
ScpResult scp_audit(const CubeDistribution& d, const AuditCaps& caps = {});

enum class RayleighDomain { NonNegative, Real };

struct RayleighWitness {
  int i = -1, j = -1;
  std::vector<double> point;
  double lhs = 0.0, rhs = 0.0;
};

struct RayleighResult {
  bool pass = false;
  std::size_t points_checked = 0;
  std::optional<RayleighWitness> witness;
};

// Spot check of F dF_ij <= dF_i dF_j at the given points (necessary
// condition only; not an SRP certificate).
RayleighResult rayleigh_spot_check(const CubeDistribution& d,
                                   const std::vector<std::vector<double>>& points,
                                   RayleighDomain domain = RayleighDomain::NonNegative);

// Corners of [0,1]^n plus 100 random points in [0,2]^n (and, for the real
// domain, 100 more in [-1,1]^n).
std::vector<std::vector<double>> default_rayleigh_points(int n, RayleighDomain domain,
                                                         std::uint64_t seed = 2024);

struct DependenceReport {
  std::optional<DependenceValue> one_sided;
  std::optional<DependenceValue> two_sided;
  std::optional<AvMaxResult> avmax;
  std::optional<NaResult> na;
  std::optional<ScpResult> scp;
  std::optional<RayleighResult> rayleigh;
  std::map<std::string, bool> lemma_checks;
  std::map<std::string, double> runtimes_s;
};

// Runs everything that fits under the caps; homogeneous-only checks are
// skipped (not failed) otherwise.
DependenceReport run_audit(const CubeDistribution& d, const AuditCaps& caps = {});

}  // namespace negdep::audit
