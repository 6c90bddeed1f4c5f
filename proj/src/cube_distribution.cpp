#include "negdep/cube_distribution.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "negdep/errors.hpp"
#include "negdep/kernels.hpp"

namespace negdep {

// Compensated (Neumaier) summation: the 1e-12 normalization gate must not
// drown in the rounding of a 2^20-term sequential sum.
double compensated_sum(const double* x, std::size_t n) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sum + x[i];
    if (std::fabs(sum) >= std::fabs(x[i]))
      comp += (sum - t) + x[i];
    else
      comp += (x[i] - t) + sum;
    sum = t;
  }
  return sum + comp;
}

CubeDistribution::CubeDistribution(int n, std::vector<double> probs)
    : n_(n), probs_(std::move(probs)) {
  if (n < 1 || n > 30) throw InputError("CubeDistribution: n out of range");
  if (probs_.size() != (std::size_t{1} << n))
    throw InputError("CubeDistribution: table size is not 2^n");
  for (double p : probs_)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InputError("CubeDistribution: probabilities must be finite and >= 0");
  const double total = compensated_sum(probs_.data(), probs_.size());
  if (std::fabs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "CubeDistribution: probabilities sum to " << total << ", not 1";
    throw InputError(msg.str());
  }

  marginals_.assign(static_cast<std::size_t>(n_), 0.0);
  int k = -1;
  bool homogeneous = true;
  for (std::size_t m = 0; m < probs_.size(); ++m) {
    const double p = probs_[m];
    if (p == 0.0) continue;
    const int pc = std::popcount(m);
    if (k < 0)
      k = pc;
    else if (pc != k)
      homogeneous = false;
    Bitmask bits = m;
    while (bits) {
      const int i = std::countr_zero(bits);
      marginals_[static_cast<std::size_t>(i)] += p;
      bits &= bits - 1;
    }
  }
  if (homogeneous && k >= 0) homogeneity_ = k;
}

CubeDistribution CubeDistribution::conditioned(Bitmask lambda, Bitmask sigma) const {
  if ((sigma & ~lambda) != 0) throw InputError("conditioned: sigma outside lambda");
  std::vector<double> out(probs_.size(), 0.0);
  double mass = 0.0;
  for (std::size_t m = 0; m < probs_.size(); ++m) {
    if ((m & lambda) == sigma) {
      out[m] = probs_[m];
      mass += probs_[m];
    }
  }
  if (mass <= 0.0) throw InputError("conditioned: event has probability zero");
  for (double& p : out) p /= mass;
  return CubeDistribution(n_, std::move(out));
}

CubeDistribution CubeDistribution::homogenized(int cap) const {
  if (2 * n_ > cap) throw InputError("homogenized: 2n exceeds cap");
  const Bitmask full = (Bitmask{1} << n_) - 1;
  std::vector<double> out(std::size_t{1} << (2 * n_), 0.0);
  for (std::size_t m = 0; m < probs_.size(); ++m) {
    if (probs_[m] == 0.0) continue;
    const Bitmask hi = (~m & full) << n_;
    out[static_cast<std::size_t>(m | hi)] = probs_[m];
  }
  return CubeDistribution(2 * n_, std::move(out));
}

std::vector<double> CubeDistribution::pivot_law() const {
  if (!homogeneity_ || *homogeneity_ < 1)
    throw InputError("pivot_law: distribution is not k-homogeneous with k >= 1");
  const double k = static_cast<double>(*homogeneity_);
  std::vector<double> law(static_cast<std::size_t>(n_), 0.0);
  // P(V=v) = sum_x P(X=x) x_v / k; equals p_v / k by homogeneity, asserted.
  for (std::size_t m = 0; m < probs_.size(); ++m) {
    if (probs_[m] == 0.0) continue;
    Bitmask bits = m;
    while (bits) {
      const int v = std::countr_zero(bits);
      law[static_cast<std::size_t>(v)] += probs_[m] / k;
      bits &= bits - 1;
    }
  }
  for (int v = 0; v < n_; ++v) {
    const double expected = marginals_[static_cast<std::size_t>(v)] / k;
    if (std::fabs(law[static_cast<std::size_t>(v)] - expected) > 1e-12)
      throw RangeError("pivot_law: enumeration disagrees with p_v/k beyond 1e-12");
  }
  return law;
}

bool CubeDistribution::is_dirac() const {
  for (double p : probs_)
    if (p != 0.0 && std::fabs(p - 1.0) > 1e-12) return false;
  return true;
}

std::vector<double> all_ones_masses(const CubeDistribution& d) {
  std::vector<double> m = d.probs();
  const int n = d.n();
  // Superset-sum zeta transform: after pass i, m[S] sums over masks
  // agreeing with S except possibly adding bit i.
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < m.size(); ++s)
      if (!(s & bit)) m[s] += m[s | bit];
  }
  return m;
}

}  // namespace negdep
