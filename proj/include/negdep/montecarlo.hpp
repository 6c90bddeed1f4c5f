#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "negdep/bounds.hpp"
#include "negdep/cube_distribution.hpp"
#include "negdep/matrix.hpp"
#include "negdep/sampler.hpp"
#include "negdep/statistic.hpp"

namespace negdep::mc {

struct RunConfig {
  std::uint64_t n = 100'000;
  std::uint64_t seed = 0;
  double alpha = 0.001;  // CI level 1 - alpha
  int threads = 1;       // affects speed only, never results
};

enum class TailMode { Centered, Raw };

struct TailReport {
  std::vector<double> t_grid;
  std::vector<double> estimate;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  std::vector<std::uint64_t> counts;  // exceedance counts (empirical reports)
  std::vector<double> bound;          // filled by attach_bound
  std::vector<char> dominated;        // estimate <= bound
  bool exact = false;
  TailMode mode = TailMode::Centered;
  std::uint64_t n_replicates = 0;
  std::uint64_t seed = 0;
  double alpha = 0.001;
  double center_norm = 0.0;   // ||E stat||
  bool center_exact = true;   // table mean, or a recorded first-pass estimate
};

// P(||stat(X) - E stat|| >= t) (centered) or P(||stat(X)|| >= t) (raw) by
// full enumeration of the table.
TailReport exact_tail(const CubeDistribution& d, const StatisticSpec& stat,
                      const std::vector<double>& ts, TailMode mode, int threads = 1);

// Empirical tail with Clopper-Pearson intervals. Centered mode takes E stat
// from the exact table when one can be built under the cap, and otherwise
// estimates it on an independent first pass of cfg.n draws (recorded, so no
// reuse bias enters the tail sample). Identical (spec, stat, ts, cfg.n,
// cfg.seed) give identical reports for any thread count.
TailReport mc_tail(const SamplerSpec& spec, const StatisticSpec& stat,
                   const std::vector<double>& ts, const RunConfig& cfg, TailMode mode,
                   int table_cap = CubeDistribution::kDefaultCap);

template <typename BoundFn>
void attach_bound(TailReport& rep, BoundFn&& fn) {
  rep.bound.resize(rep.t_grid.size());
  rep.dominated.resize(rep.t_grid.size());
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
    rep.bound[i] = fn(rep.t_grid[i]);
    rep.dominated[i] = rep.estimate[i] <= rep.bound[i] ? 1 : 0;
  }
}

// Quadratic-form coefficients c_ij (square matrices, zero diagonal blocks).
struct DecouplingCoeffs {
  int n = 0;
  int dim = 1;
  std::vector<RectMatrix> c;  // n*n row-major
};

DecouplingCoeffs scalar_coeffs(const RectMatrix& c);       // 1x1 blocks from an n x n table
DecouplingCoeffs submatrix_coeffs(const SymMatrix& h);     // c_ij = h_ij e_i e_j^T

struct MonotoneWitness {
  Bitmask x = 0, y = 0;
  int coord = -1;
  bool in_x = true;  // which argument was increased
};

struct DecouplingReport {
  bool homogeneous = false;
  bool monotone_checked = false;
  bool monotone = true;
  std::optional<MonotoneWitness> monotone_witness;

  // E(sum c_ij X_i X_j delta_i (1 - delta_j) | X) == (1/4) sum c_ij X_i X_j,
  // enumerated over delta for every support point.
  bool identity_quarter_pass = false;
  double identity_quarter_dev = 0.0;

  // P(. | I = J) == P(. | X_J = 1) for every J with P(I = J) > 0, with
  // P(I = J) obtained by enumerating delta.
  bool identity_conditioning_pass = false;
  double identity_conditioning_dev = 0.0;

  std::vector<double> c0_grid;
  std::vector<char> c0_ok;
  std::optional<double> smallest_c0;
  TailReport coupled;
  TailReport decoupled;
};

// Decoupling verification: the two exact identities from the construction
// with delta_i | X ~ Bernoulli(X_i / 2), plus an empirical comparison of
// P(||Q(X,X)|| >= t) against C0 P(||Q(X,Y)|| >= t/C0) over a geometric C0
// grid. Monotonicity of (x,y) -> ||Q(x,y)|| is brute-forced for n <= 8.
DecouplingReport decoupling_check(const CubeDistribution& d, const DecouplingCoeffs& coeffs,
                                  const std::vector<double>& ts, const RunConfig& cfg);

struct SubmatrixExperimentReport {
  TailReport tail;
  bounds::SubmatrixParams params;
  std::vector<char> valid;  // theorem hypothesis t > C ||sqrt(P) H sqrt(P)||
  bool exact_inclusion = false;
  std::vector<double> inclusion;
};

// Samples X, forms Lambda_X H Lambda_X, and compares the empirical norm tail
// with the submatrix bound at the configured constants. Inclusion
// probabilities come from the exact table when it fits under the cap,
// otherwise from the empirical frequencies of the same run.
SubmatrixExperimentReport submatrix_experiment(const SymMatrix& h, const SamplerSpec& spec,
                                               const std::vector<double>& ts, const RunConfig& cfg,
                                               double big_c = bounds::kDefaultC,
                                               double little_c = bounds::kDefaultLittleC,
                                               int table_cap = CubeDistribution::kDefaultCap);

// Uniform grid of `steps` points on (min, max]; min = 0 starts at max/steps.
std::vector<double> t_grid(double min, double max, int steps);

}  // namespace negdep::mc
