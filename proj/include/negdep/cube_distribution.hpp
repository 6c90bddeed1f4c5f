#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace negdep {

using Bitmask = std::uint64_t;

// Explicit probability table on {0,1}^n indexed by bitmask (bit i is
// coordinate i). Immutable after construction; marginals are cached up
// front. Homogeneity is detected from the support, never declared.
class CubeDistribution {
 public:
  static constexpr int kDefaultCap = 20;

  CubeDistribution(int n, std::vector<double> probs);

  int n() const { return n_; }
  double prob(Bitmask mask) const { return probs_[static_cast<std::size_t>(mask)]; }
  const std::vector<double>& probs() const { return probs_; }

  // k if every support mask has popcount k.
  std::optional<int> homogeneity() const { return homogeneity_; }

  // p_i = P(X_i = 1).
  const std::vector<double>& inclusion_probabilities() const { return marginals_; }

  // Conditional law given X_l = sigma_l for l in lambda (coordinates stay
  // pinned on the full cube). InputError on a zero-probability event.
  CubeDistribution conditioned(Bitmask lambda, Bitmask sigma) const;

  // Law of (X, 1-X) on 2n coordinates; n-homogeneous by construction.
  CubeDistribution homogenized(int cap = kDefaultCap) const;

  // Law of the pivot V (uniform on supp(X) given X): P(V=v) = p_v / k.
  // Requires homogeneity with k >= 1.
  std::vector<double> pivot_law() const;

  bool is_dirac() const;

 private:
  int n_ = 0;
  std::vector<double> probs_;
  std::vector<double> marginals_;
  std::optional<int> homogeneity_;
};

// P(X_S = 1 for all S in the set mask) for every S, via a superset-sum
// (zeta) transform of the table; entry [S] = sum over masks containing S.
std::vector<double> all_ones_masses(const CubeDistribution& d);

// Neumaier-compensated sum; accurate enough for the 1e-12 normalization gate
// on 2^20-entry tables.
double compensated_sum(const double* x, std::size_t n);

}  // namespace negdep
