#include "negdep/bounds.hpp"

#include <cmath>
#include <limits>

#include "negdep/errors.hpp"
#include "negdep/linalg.hpp"

namespace negdep::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// min over the finite ratios; +inf when every parameter degenerates, which
// the callers turn into a zero bound (the statistic is deterministic).
double gauss_exp_ratio(double t, double sigma2, double r) {
  double m = kInf;
  if (sigma2 > 0.0) m = std::min(m, t * t / sigma2);
  if (r > 0.0) m = std::min(m, t / r);
  return m;
}

}  // namespace

BernsteinParams bernstein_params(const std::vector<double>& p, const std::vector<SymMatrix>& a,
                                 bool centered, std::optional<int> k, double big_d, double c) {
  if (p.size() != a.size() || a.empty())
    throw InputError("bernstein_params: need matching nonempty p and A lists");
  for (double pi : p)
    if (!(pi >= 0.0 && pi <= 1.0)) throw InputError("bernstein_params: p_i must lie in [0,1]");
  const int dim = a.front().dim();
  for (const auto& m : a)
    if (m.dim() != dim) throw InputError("bernstein_params: matrix dimensions differ");

  BernsteinParams out;
  out.dim = dim;
  out.d_param = big_d;
  out.c = c;

  SymMatrix abar(dim);
  if (centered) {
    if (!k || *k < 1) throw InputError("bernstein_params: centered variant requires homogeneity k");
    for (std::size_t i = 0; i < a.size(); ++i) abar += p[i] * a[i];
    abar *= 1.0 / static_cast<double>(*k);
  }

  SymMatrix second_moment(dim);
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r = std::max(r, spectral_norm(a[i]));
    if (p[i] == 0.0) continue;
    const SymMatrix term = centered ? a[i] - abar : a[i];
    second_moment += p[i] * sym_square(term);
  }
  out.sigma2 = spectral_norm(second_moment);
  out.r = centered ? r + spectral_norm(abar) : r;
  return out;
}

double bernstein_tail(double t, const BernsteinParams& params, bool clamp) {
  if (!(t > 0.0)) throw InputError("bernstein_tail: t must be > 0");
  const double ratio = gauss_exp_ratio(t, params.sigma2, params.r);
  double bound = ratio == kInf
                     ? 0.0
                     : 2.0 * params.dim *
                           std::exp(-ratio / (params.c * params.d_param * params.d_param));
  if (clamp) bound = std::min(1.0, bound);
  return bound;
}

double psd_tail(double t, double ez_norm, double r, double big_d, int dim, double c) {
  if (!(t > 0.0)) throw InputError("psd_tail: t must be > 0");
  if (ez_norm < 0.0 || r < 0.0) throw InputError("psd_tail: norms must be >= 0");
  double ratio = kInf;
  if (ez_norm > 0.0 && r > 0.0) ratio = std::min(ratio, t * t / (ez_norm * r));
  if (r > 0.0) ratio = std::min(ratio, t / r);
  if (ratio == kInf) return 0.0;  // R = 0: Z is deterministic
  return 2.0 * dim * std::exp(-ratio / (c * big_d * big_d));
}

std::pair<double, double> kks_bounds(double delta, double ez_norm, double min_eig, double big_d,
                                     int dim, double c) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("kks_bounds: delta must lie in [0,1]");
  const double denom = c * big_d * big_d;
  const double upper = dim * std::exp(-delta * delta * ez_norm / denom);
  const double lower = dim * std::exp(-delta * delta * min_eig / denom);
  return {upper, lower};
}

IncrementCheck increment_domination_check(const TableStatistic& f, const std::vector<SymMatrix>& a,
                                          double tol) {
  validate_statistic(StatisticSpec{f});
  if (static_cast<int>(a.size()) != f.n)
    throw InputError("increment_domination_check: need one A_i per coordinate");
  const int dim = f.values.front().dim();
  for (const auto& m : a)
    if (m.dim() != dim) throw InputError("increment_domination_check: dimension mismatch");
  std::vector<SymMatrix> a2;
  a2.reserve(a.size());
  for (const auto& m : a) a2.push_back(sym_square(m));

  IncrementCheck out;
  out.pass = true;
  for (Bitmask x = 0; x < (Bitmask{1} << f.n); ++x) {
    for (int i = 0; i < f.n; ++i) {
      const Bitmask y = x ^ (Bitmask{1} << i);
      if (y < x) continue;  // each unordered pair once; the square is symmetric in (x,y)
      const SymMatrix diff = f.values[static_cast<std::size_t>(x)] - f.values[static_cast<std::size_t>(y)];
      if (!psd_leq(sym_square(diff), a2[static_cast<std::size_t>(i)], tol).holds) {
        out.pass = false;
        out.x = x;
        out.i = i;
        return out;
      }
    }
  }
  return out;
}

double lipschitz_tail(double t, double sigma2, double r, int dim, double c) {
  if (!(t > 0.0)) throw InputError("lipschitz_tail: t must be > 0");
  const double ratio = gauss_exp_ratio(t, sigma2, r);
  if (ratio == kInf) return 0.0;
  return 2.0 * dim * std::exp(-ratio / c);
}

SubmatrixParams submatrix_params(const SymMatrix& h, const std::vector<double>& p, double big_c,
                                 double little_c) {
  require_zero_diagonal(h, "submatrix_params");
  const int d = h.dim();
  if (static_cast<int>(p.size()) != d)
    throw InputError("submatrix_params: inclusion probability size mismatch");
  for (double pi : p)
    if (!(pi >= 0.0 && pi <= 1.0)) throw InputError("submatrix_params: p_i must lie in [0,1]");

  RectMatrix sqrtp_h(d, d), h_sqrtp(d, d), php(d, d);
  for (int i = 0; i < d; ++i) {
    const double si = std::sqrt(p[static_cast<std::size_t>(i)]);
    for (int j = 0; j < d; ++j) {
      const double sj = std::sqrt(p[static_cast<std::size_t>(j)]);
      sqrtp_h(i, j) = si * h(i, j);
      h_sqrtp(i, j) = h(i, j) * sj;
      php(i, j) = si * h(i, j) * sj;
    }
  }
  SubmatrixParams out;
  out.nphp = spectral_norm(SymMatrix(php));
  out.n12 = mixed_norm(sqrtp_h, MixedNormKind::L1ToL2);
  out.n2inf = mixed_norm(h_sqrtp, MixedNormKind::L2ToLinf);
  out.n1inf = mixed_norm(h.as_rect(), MixedNormKind::L1ToLinf);
  out.big_c = big_c;
  out.little_c = little_c;
  return out;
}

SubmatrixTail submatrix_tail(double t, const SubmatrixParams& params, int dim) {
  if (!(t > 0.0)) throw InputError("submatrix_tail: t must be > 0");
  double ratio = kInf;
  if (params.n12 > 0.0) ratio = std::min(ratio, t * t / (params.n12 * params.n12));
  if (params.n2inf > 0.0) ratio = std::min(ratio, t * t / (params.n2inf * params.n2inf));
  if (params.n1inf > 0.0) ratio = std::min(ratio, t / params.n1inf);
  SubmatrixTail out;
  out.bound = ratio == kInf ? 0.0 : 2.0 * dim * std::exp(-params.little_c * ratio);
  out.valid = t > params.big_c * params.nphp;
  return out;
}

std::vector<SymMatrix> linear_increment_coefficients(const std::vector<SymMatrix>& c) {
  std::vector<SymMatrix> a;
  a.reserve(c.size());
  for (const auto& m : c) a.push_back(psd_sqrt(sym_square(m)));
  return a;
}

std::vector<SymMatrix> chain_increment_coefficients(const std::vector<SymMatrix>& c) {
  if (c.empty()) throw InputError("chain_increment_coefficients: need at least one matrix");
  const std::size_t n = c.size() + 1;
  std::vector<SymMatrix> a;
  a.reserve(n);
  a.push_back(psd_sqrt(sym_square(c.front())));
  for (std::size_t i = 1; i + 1 < n; ++i)
    a.push_back(psd_sqrt(2.0 * sym_square(c[i - 1]) + 2.0 * sym_square(c[i])));
  a.push_back(psd_sqrt(sym_square(c.back())));
  return a;
}

TableStatistic linear_statistic_table(const std::vector<SymMatrix>& c) {
  const int n = static_cast<int>(c.size());
  TableStatistic out;
  out.n = n;
  out.values.reserve(std::size_t{1} << n);
  for (Bitmask x = 0; x < (Bitmask{1} << n); ++x) {
    SymMatrix acc(c.front().dim());
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1) acc += c[static_cast<std::size_t>(i)];
    out.values.push_back(std::move(acc));
  }
  return out;
}

TableStatistic chain_statistic_table(const std::vector<SymMatrix>& c) {
  const int n = static_cast<int>(c.size()) + 1;
  TableStatistic out;
  out.n = n;
  out.values.reserve(std::size_t{1} << n);
  for (Bitmask x = 0; x < (Bitmask{1} << n); ++x) {
    SymMatrix acc(c.front().dim());
    for (int i = 0; i + 1 < n; ++i)
      if (((x >> i) & 1) && ((x >> (i + 1)) & 1)) acc += c[static_cast<std::size_t>(i)];
    out.values.push_back(std::move(acc));
  }
  return out;
}

}  // namespace negdep::bounds
