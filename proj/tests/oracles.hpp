#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check (no Eigen, no shared helpers beyond the matrix type).

#include <cmath>
#include <bit>
#include <random>
#include <vector>

#include "negdep/cube_distribution.hpp"
#include "negdep/matrix.hpp"

namespace oracles {

using negdep::Bitmask;
using negdep::CubeDistribution;
using negdep::RectMatrix;
using negdep::SymMatrix;

// Largest |eigenvalue| by power iteration on A^2 (A symmetric), several
// random restarts, no eigensolver involved.
inline double power_iteration_norm(const SymMatrix& a, int iters = 4000, int restarts = 3) {
  const int d = a.dim();
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = g(gen);
    double lambda2 = 0.0;
    for (int it = 0; it < iters; ++it) {
      // w = A v, u = A w  (applies A^2)
      std::vector<double> w(static_cast<std::size_t>(d), 0.0), u(static_cast<std::size_t>(d), 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) u[static_cast<std::size_t>(i)] += a(i, j) * w[static_cast<std::size_t>(j)];
      double nu = 0.0, nv = 0.0, quad = 0.0;
      for (int i = 0; i < d; ++i) {
        nu += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        nv += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        quad += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      }
      lambda2 = quad / nv;
      if (nu == 0.0) break;
      const double inv = 1.0 / std::sqrt(nu);
      for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * inv;
    }
    best = std::max(best, std::sqrt(std::max(0.0, lambda2)));
  }
  return best;
}

// tr exp(A) via scaling-and-squaring of a Taylor series.
inline double trace_exp_series(const SymMatrix& a) {
  const int d = a.dim();
  double norm1 = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::fabs(a(i, j));
    norm1 = std::max(norm1, row);
  }
  int s = 0;
  while (norm1 > 0.5) {
    norm1 /= 2.0;
    ++s;
  }
  const double scale = std::ldexp(1.0, -s);
  auto mul = [d](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const double f = x[static_cast<std::size_t>(i) * d + k];
        if (f == 0.0) continue;
        for (int j = 0; j < d; ++j)
          z[static_cast<std::size_t>(i) * d + j] += f * y[static_cast<std::size_t>(k) * d + j];
      }
    return z;
  };
  std::vector<double> base(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) base[static_cast<std::size_t>(i) * d + j] = scale * a(i, j);
  std::vector<double> result(static_cast<std::size_t>(d) * d, 0.0), term(result);
  for (int i = 0; i < d; ++i) {
    result[static_cast<std::size_t>(i) * d + i] = 1.0;
    term[static_cast<std::size_t>(i) * d + i] = 1.0;
  }
  for (int n = 1; n <= 24; ++n) {
    term = mul(term, base);
    const double inv = 1.0 / n;
    for (auto& x : term) x *= inv;
    for (std::size_t idx = 0; idx < result.size(); ++idx) result[idx] += term[idx];
  }
  for (int r = 0; r < s; ++r) result = mul(result, result);
  double tr = 0.0;
  for (int i = 0; i < d; ++i) tr += result[static_cast<std::size_t>(i) * d + i];
  return tr;
}

// Definitional mixed norms from extreme points: columns (l1 domain), +-1
// vectors (linf domain), rows (l2 -> linf).
inline double naive_l1_to_l2(const RectMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

inline double naive_l1_to_linf(const RectMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) best = std::max(best, std::fabs(a(i, j)));
  return best;
}

inline double naive_l2_to_linf(const RectMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

// sup over x in {-1,1}^cols of ||A x||_inf (exact for linf -> linf).
inline double naive_linf_to_linf(const RectMatrix& a) {
  const int c = a.cols();
  double best = 0.0;
  for (Bitmask m = 0; m < (Bitmask{1} << c); ++m) {
    for (int i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (int j = 0; j < c; ++j) s += a(i, j) * (((m >> j) & 1) ? 1.0 : -1.0);
      best = std::max(best, std::fabs(s));
    }
  }
  return best;
}

// Direct-summation conditional probabilities straight from the definition;
// shares nothing with the audit module's accumulation scheme.
inline double direct_conditional(const CubeDistribution& d, int j, Bitmask event_ones,
                                 Bitmask event_zeros, bool* defined) {
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < d.probs().size(); ++m) {
    if ((m & event_ones) != event_ones) continue;
    if ((m & event_zeros) != 0) continue;
    den += d.prob(m);
    if ((m >> j) & 1) num += d.prob(m);
  }
  *defined = den > 0.0;
  return *defined ? num / den : 0.0;
}

inline RectMatrix direct_psi(const CubeDistribution& d, Bitmask lambda, Bitmask sigma) {
  const int n = d.n();
  RectMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const Bitmask bi = Bitmask{1} << i;
    for (int j = 0; j < n; ++j) {
      bool def1 = false, def0 = false;
      const double c1 = direct_conditional(d, j, sigma | bi, lambda & ~sigma, &def1);
      const double c0 = direct_conditional(d, j, sigma, (lambda & ~sigma) | bi, &def0);
      out(i, j) = (def1 && def0) ? c1 - c0 : 0.0;
    }
  }
  return out;
}

inline RectMatrix direct_iota(const CubeDistribution& d, Bitmask lambda) {
  const int n = d.n();
  RectMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const Bitmask bi = Bitmask{1} << i;
    for (int j = 0; j < n; ++j) {
      bool def1 = false, def_base = false;
      const double c1 = direct_conditional(d, j, lambda | bi, 0, &def1);
      const double base = direct_conditional(d, j, lambda, 0, &def_base);
      out(i, j) = (def1 && def_base) ? c1 - base : 0.0;
    }
  }
  return out;
}

// Determinant by cofactor expansion (tiny matrices only).
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size();
  if (k == 0) return 1.0;
  if (k == 1) return m[0][0];
  double det = 0.0;
  double sign = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<double> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    det += sign * m[0][c] * cofactor_det(minor);
    sign = -sign;
  }
  return det;
}

// Exact projection-DPP table by principal-minor enumeration.
inline std::vector<double> dpp_table_by_minors(const SymMatrix& kernel, int rank) {
  const int n = kernel.dim();
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  double total = 0.0;
  for (Bitmask m = 0; m < (Bitmask{1} << n); ++m) {
    int pc = 0;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) {
        ++pc;
        idx.push_back(i);
      }
    if (pc != rank) continue;
    std::vector<std::vector<double>> sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = kernel(idx[a], idx[b]);
    probs[static_cast<std::size_t>(m)] = std::fabs(cofactor_det(sub));
    total += probs[static_cast<std::size_t>(m)];
  }
  for (auto& p : probs) p /= total;
  return probs;
}

// Random matrix helpers shared by the test suites.
inline SymMatrix random_sym(std::mt19937_64& gen, int d, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> entries(static_cast<std::size_t>(d) * d);
  for (auto& x : entries) x = u(gen);
  return SymMatrix(d, std::move(entries));
}

inline SymMatrix random_psd(std::mt19937_64& gen, int d, double scale = 1.0) {
  const SymMatrix g = random_sym(gen, d, scale);
  SymMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += g(i, k) * g(j, k);
      out.set(i, j, s);
    }
  return out;
}

inline RectMatrix random_rect(std::mt19937_64& gen, int r, int c, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> entries(static_cast<std::size_t>(r) * c);
  for (auto& x : entries) x = u(gen);
  return RectMatrix(r, c, std::move(entries));
}

// Random probability table on {0,1}^n (optionally k-homogeneous) with
// roughly `sparsity` of the admissible masks in the support.
inline CubeDistribution random_table(std::mt19937_64& gen, int n, int k = -1,
                                     double sparsity = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  double total = 0.0;
  while (total == 0.0) {
    for (std::size_t m = 0; m < probs.size(); ++m) {
      if (k >= 0 && std::popcount(m) != k) continue;
      if (u(gen) > sparsity) continue;
      probs[m] = u(gen);
      total += probs[m];
    }
  }
  for (auto& p : probs) p /= total;
  // Renormalize exactly enough for the 1e-12 constructor gate.
  double check = 0.0;
  for (double p : probs) check += p;
  for (auto& p : probs) p /= check;
  return CubeDistribution(n, std::move(probs));
}

}  // namespace oracles
