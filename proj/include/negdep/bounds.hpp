#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "negdep/matrix.hpp"
#include "negdep/statistic.hpp"

namespace negdep::bounds {

// Absolute constant used by default in every exponent; the proofs only
// assert existence, so it is configuration, never hard-coded into a
// comparison.
inline constexpr double kDefaultC = 35.0;
inline constexpr double kDefaultLittleC = 1.0;

// Sharper alternative at the trace-MGF level: with K >= kLaplaceC * D^2 and
// |lambda| <= 1/(4K), E tr exp(lambda (Z - EZ)) <= tr exp(lambda^2 K sum_i
// p_i A_i^2) for R = 1. The tail constant kDefaultC = 8 * kLaplaceC comes
// from the Chernoff step.
inline constexpr double kLaplaceC = 35.0 / 8.0;

struct BernsteinParams {
  double sigma2 = 0.0;  // ||sum_i p_i A_i^2|| (possibly centered)
  double r = 0.0;       // max_i ||A_i|| (+ ||Abar|| when centered)
  double d_param = 1.0; // dependence parameter D
  int dim = 1;
  double c = kDefaultC;
};

// sigma2/R from inclusion probabilities and coefficients. Centered variant
// subtracts Abar = (1/k) sum_i p_i A_i from every A_i and charges ||Abar||
// to R; it requires the homogeneity degree k.
BernsteinParams bernstein_params(const std::vector<double>& p, const std::vector<SymMatrix>& a,
                                 bool centered = false, std::optional<int> k = std::nullopt,
                                 double big_d = 1.0, double c = kDefaultC);

// 2 d exp(-min(t^2/sigma2, t/R) / (C D^2)). Degenerate parameters drop out
// of the min; if both sigma2 and R vanish the statistic is deterministic and
// the bound is 0 for t > 0.
double bernstein_tail(double t, const BernsteinParams& params, bool clamp = false);

// PSD corollary: 2 d exp(-min(t^2/(||EZ|| R), t/R) / (C D^2)) bounds
// P(||Z|| >= ||EZ|| + t).
double psd_tail(double t, double ez_norm, double r, double big_d, int dim, double c = kDefaultC);

// (upper-tail, lower-eigenvalue) pair:
// d exp(-delta^2 ||EZ|| / (C D^2)), d exp(-delta^2 mu_min(EZ) / (C D^2)).
std::pair<double, double> kks_bounds(double delta, double ez_norm, double min_eig, double big_d,
                                     int dim, double c = kDefaultC);

struct IncrementCheck {
  bool pass = false;
  Bitmask x = 0;  // witness when !pass
  int i = -1;
};

// (f(x) - f(x xor e_i))^2 <= A_i^2 in the PSD order, for all x and i.
IncrementCheck increment_domination_check(const TableStatistic& f, const std::vector<SymMatrix>& a,
                                          double tol = 1e-9);

// 2 d exp(-min(t^2/sigma2, t/R) / C); no dependence factor.
double lipschitz_tail(double t, double sigma2, double r, int dim, double c = kDefaultC);

struct SubmatrixParams {
  double nphp = 0.0;   // ||sqrt(P) H sqrt(P)||
  double n12 = 0.0;    // ||sqrt(P) H||_{l1->l2}
  double n2inf = 0.0;  // ||H sqrt(P)||_{l2->linf}
  double n1inf = 0.0;  // ||H||_{l1->linf}
  double big_c = kDefaultC;
  double little_c = kDefaultLittleC;
};

SubmatrixParams submatrix_params(const SymMatrix& h, const std::vector<double>& p,
                                 double big_c = kDefaultC, double little_c = kDefaultLittleC);

struct SubmatrixTail {
  double bound = 0.0;
  bool valid = false;  // t > C ||sqrt(P) H sqrt(P)||, the theorem hypothesis
};

// 2 d exp(-c min(t^2/n12^2, t^2/n2inf^2, t/n1inf)); reported even when the
// validity hypothesis fails, with the flag cleared.
SubmatrixTail submatrix_tail(double t, const SubmatrixParams& params, int dim);

// Increment coefficients for f(x) = sum_i x_i C_i: A_i = sqrt(C_i^2).
std::vector<SymMatrix> linear_increment_coefficients(const std::vector<SymMatrix>& c);

// Increment coefficients for the chain f(x) = sum_{i<n} C_i x_i x_{i+1}:
// A_0 = sqrt(C_0^2), A_i = sqrt(2(C_{i-1}^2 + C_i^2)), A_{n-1} =
// sqrt(C_{n-2}^2).
std::vector<SymMatrix> chain_increment_coefficients(const std::vector<SymMatrix>& c);

// f tables for the two worked statistics above.
TableStatistic linear_statistic_table(const std::vector<SymMatrix>& c);
TableStatistic chain_statistic_table(const std::vector<SymMatrix>& c);

}  // namespace negdep::bounds
