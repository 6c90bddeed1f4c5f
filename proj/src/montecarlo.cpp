#include "negdep/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include "negdep/errors.hpp"
#include "negdep/kernels.hpp"
#include "negdep/linalg.hpp"
#include "negdep/stats.hpp"
#include "negdep/thread_pool.hpp"

namespace negdep::mc {

namespace {

constexpr std::size_t kMaskBlock = 4096;       // enumeration work unit
constexpr std::size_t kReplicateBlock = 8192;  // Monte Carlo work unit

std::size_t block_count(std::size_t total, std::size_t block) {
  return (total + block - 1) / block;
}

// E stat under d, accumulated per fixed block and combined in block order.
SymMatrix exact_mean(const CubeDistribution& d, const StatisticSpec& stat, int threads) {
  const std::size_t size = d.probs().size();
  const int dim = statistic_dim(stat);
  const std::size_t nblocks = block_count(size, kMaskBlock);
  std::vector<SymMatrix> partial(nblocks, SymMatrix(dim));
  parallel_for_blocks(nblocks, threads, [&](std::size_t b) {
    const std::size_t lo = b * kMaskBlock;
    const std::size_t hi = std::min(size, lo + kMaskBlock);
    SymMatrix acc(dim);
    std::vector<double> flat(acc.data());
    for (std::size_t m = lo; m < hi; ++m) {
      const double p = d.prob(m);
      if (p == 0.0) continue;
      const SymMatrix value = evaluate_statistic(stat, m);
      kernels::axpy(p, value.data().data(), flat.data(), flat.size());
    }
    partial[b] = SymMatrix(dim, std::move(flat));
  });
  SymMatrix mean(dim);
  for (const auto& part : partial) mean += part;
  return mean;
}

void fill_cp_intervals(TailReport& rep) {
  rep.ci_lo.resize(rep.counts.size());
  rep.ci_hi.resize(rep.counts.size());
  for (std::size_t i = 0; i < rep.counts.size(); ++i) {
    const auto iv = stats::clopper_pearson(rep.counts[i], rep.n_replicates, rep.alpha);
    rep.ci_lo[i] = iv.lo;
    rep.ci_hi[i] = iv.hi;
  }
}

}  // namespace

std::vector<double> t_grid(double min, double max, int steps) {
  if (steps < 1 || !(max > min)) throw InputError("t_grid: need steps >= 1 and max > min");
  std::vector<double> ts(static_cast<std::size_t>(steps));
  const double step = (max - min) / steps;
  for (int i = 0; i < steps; ++i) ts[static_cast<std::size_t>(i)] = min + step * (i + 1);
  return ts;
}

TailReport exact_tail(const CubeDistribution& d, const StatisticSpec& stat,
                      const std::vector<double>& ts, TailMode mode, int threads) {
  validate_statistic(stat);
  if (statistic_coords(stat) != d.n())
    throw InputError("exact_tail: statistic coordinates do not match the distribution");
  TailReport rep;
  rep.exact = true;
  rep.mode = mode;
  rep.t_grid = ts;

  const int dim = statistic_dim(stat);
  SymMatrix center(dim);
  if (mode == TailMode::Centered) center = exact_mean(d, stat, threads);
  rep.center_norm = spectral_norm(center);

  const std::size_t size = d.probs().size();
  std::vector<double> values(size, 0.0);
  parallel_for_blocks(block_count(size, kMaskBlock), threads, [&](std::size_t b) {
    const std::size_t lo = b * kMaskBlock;
    const std::size_t hi = std::min(size, lo + kMaskBlock);
    for (std::size_t m = lo; m < hi; ++m) {
      if (d.prob(m) == 0.0) continue;
      SymMatrix value = evaluate_statistic(stat, m);
      if (mode == TailMode::Centered) value -= center;
      values[m] = spectral_norm(value);
    }
  });

  rep.estimate.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    rep.estimate[i] = kernels::weighted_count_geq(values.data(), d.probs().data(), ts[i], size);
  rep.ci_lo = rep.estimate;
  rep.ci_hi = rep.estimate;
  return rep;
}

namespace {

std::vector<double> sampled_norms(const SamplerSpec& spec, const StatisticSpec& stat,
                                  const SymMatrix* center, const RunConfig& cfg,
                                  std::uint64_t stream_base) {
  std::vector<double> values(cfg.n);
  parallel_for_blocks(block_count(cfg.n, kReplicateBlock), cfg.threads, [&](std::size_t b) {
    const std::uint64_t lo = b * kReplicateBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(cfg.n, lo + kReplicateBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      RngStream rng(cfg.seed, stream_base + i);
      const Bitmask x = sample(spec, rng);
      SymMatrix value = evaluate_statistic(stat, x);
      if (center) value -= *center;
      values[i] = spectral_norm(value);
    }
  });
  return values;
}

}  // namespace

TailReport mc_tail(const SamplerSpec& spec, const StatisticSpec& stat,
                   const std::vector<double>& ts, const RunConfig& cfg, TailMode mode,
                   int table_cap) {
  validate_spec(spec);
  validate_statistic(stat);
  if (statistic_coords(stat) != scheme_coords(spec))
    throw InputError("mc_tail: statistic coordinates do not match the sampler");
  if (cfg.n < 1) throw InputError("mc_tail: need at least one replicate");

  TailReport rep;
  rep.mode = mode;
  rep.t_grid = ts;
  rep.n_replicates = cfg.n;
  rep.seed = cfg.seed;
  rep.alpha = cfg.alpha;

  const int dim = statistic_dim(stat);
  SymMatrix center(dim);
  if (mode == TailMode::Centered) {
    std::optional<CubeDistribution> table;
    if (scheme_coords(spec) <= table_cap) {
      try {
        table = build_distribution(spec, table_cap);
      } catch (const InputError&) {
        // no enumerable table (e.g. a large spanning-tree edge set)
      }
    }
    if (table) {
      center = exact_mean(*table, stat, cfg.threads);
    } else {
      // Independent first pass (streams [0, n)) so the center estimate does
      // not reuse the tail sample.
      rep.center_exact = false;
      const std::size_t nblocks = block_count(cfg.n, kReplicateBlock);
      std::vector<SymMatrix> partial(nblocks, SymMatrix(dim));
      parallel_for_blocks(nblocks, cfg.threads, [&](std::size_t b) {
        const std::uint64_t lo = b * kReplicateBlock;
        const std::uint64_t hi = std::min<std::uint64_t>(cfg.n, lo + kReplicateBlock);
        SymMatrix acc(dim);
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng(cfg.seed, i);
          acc += evaluate_statistic(stat, sample(spec, rng));
        }
        partial[b] = acc;
      });
      for (const auto& part : partial) center += part;
      center *= 1.0 / static_cast<double>(cfg.n);
    }
  }
  rep.center_norm = spectral_norm(center);

  const std::vector<double> values =
      sampled_norms(spec, stat, mode == TailMode::Centered ? &center : nullptr, cfg, cfg.n);

  rep.counts.resize(ts.size());
  rep.estimate.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    rep.counts[i] = kernels::count_geq(values.data(), ts[i], values.size());
    rep.estimate[i] = static_cast<double>(rep.counts[i]) / static_cast<double>(cfg.n);
  }
  fill_cp_intervals(rep);
  return rep;
}

DecouplingCoeffs scalar_coeffs(const RectMatrix& c) {
  if (c.rows() != c.cols()) throw InputError("scalar_coeffs: table must be square");
  DecouplingCoeffs out;
  out.n = c.rows();
  out.dim = 1;
  out.c.reserve(static_cast<std::size_t>(out.n) * out.n);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j)
      out.c.push_back(RectMatrix(1, 1, {c(i, j)}));
  return out;
}

DecouplingCoeffs submatrix_coeffs(const SymMatrix& h) {
  DecouplingCoeffs out;
  out.n = h.dim();
  out.dim = h.dim();
  out.c.reserve(static_cast<std::size_t>(out.n) * out.n);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j) {
      RectMatrix e(out.dim, out.dim);
      if (i != j) e(i, j) = h(i, j);
      out.c.push_back(std::move(e));
    }
  return out;
}

namespace {

void validate_coeffs(const DecouplingCoeffs& coeffs) {
  if (coeffs.n < 1 || coeffs.dim < 1 ||
      coeffs.c.size() != static_cast<std::size_t>(coeffs.n) * coeffs.n)
    throw InputError("decoupling: need an n x n coefficient table");
  for (const auto& m : coeffs.c)
    if (m.rows() != coeffs.dim || m.cols() != coeffs.dim)
      throw InputError("decoupling: coefficient dimensions differ");
  for (int i = 0; i < coeffs.n; ++i)
    if (!coeffs.c[static_cast<std::size_t>(i) * coeffs.n + i].is_zero())
      throw InputError("decoupling: diagonal coefficients must be zero");
}

RectMatrix bilinear_sum(const DecouplingCoeffs& coeffs, Bitmask x, Bitmask y) {
  RectMatrix acc(coeffs.dim, coeffs.dim);
  for (Bitmask bx = x; bx;) {
    const int i = std::countr_zero(bx);
    bx &= bx - 1;
    for (Bitmask by = y; by;) {
      const int j = std::countr_zero(by);
      by &= by - 1;
      if (i != j) acc += coeffs.c[static_cast<std::size_t>(i) * coeffs.n + j];
    }
  }
  return acc;
}

double coeff_scale(const DecouplingCoeffs& coeffs) {
  double s = 0.0;
  for (const auto& m : coeffs.c)
    s = std::max(s, kernels::max_abs(m.data().data(), m.data().size()));
  return s;
}

// Inverse-CDF sampling from the explicit table.
struct TableSampler {
  std::vector<double> cdf;
  explicit TableSampler(const CubeDistribution& d) : cdf(d.probs()) {
    double acc = 0.0;
    for (double& p : cdf) {
      acc += p;
      p = acc;
    }
    cdf.back() = 1.0;
  }
  Bitmask draw(RngStream& rng) const {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<Bitmask>(std::min<std::size_t>(
        static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
  }
};

}  // namespace

DecouplingReport decoupling_check(const CubeDistribution& d, const DecouplingCoeffs& coeffs,
                                  const std::vector<double>& ts, const RunConfig& cfg) {
  validate_coeffs(coeffs);
  if (coeffs.n != d.n()) throw InputError("decoupling: coefficient table does not match n");
  const int n = d.n();
  DecouplingReport rep;
  rep.homogeneous = d.homogeneity().has_value();

  // Hypothesis: (x,y) -> ||Q(x,y)|| coordinate-wise non-decreasing.
  if (n <= 8) {
    rep.monotone_checked = true;
    const std::size_t side = std::size_t{1} << n;
    std::vector<double> norms(side * side);
    parallel_for_blocks(side, cfg.threads, [&](std::size_t xi) {
      for (std::size_t yi = 0; yi < side; ++yi)
        norms[xi * side + yi] = spectral_norm(bilinear_sum(coeffs, xi, yi));
    });
    for (std::size_t xi = 0; xi < side && rep.monotone; ++xi) {
      for (std::size_t yi = 0; yi < side && rep.monotone; ++yi) {
        const double base = norms[xi * side + yi];
        const double tol = 1e-12 * std::max(1.0, base);
        for (int c = 0; c < n; ++c) {
          const std::size_t bit = std::size_t{1} << c;
          if (!(xi & bit) && norms[(xi | bit) * side + yi] < base - tol) {
            rep.monotone = false;
            rep.monotone_witness = MonotoneWitness{xi, yi, c, true};
            break;
          }
          if (!(yi & bit) && norms[xi * side + (yi | bit)] < base - tol) {
            rep.monotone = false;
            rep.monotone_witness = MonotoneWitness{xi, yi, c, false};
            break;
          }
        }
      }
    }
  }

  const double scale = std::max(1.0, coeff_scale(coeffs));

  // Exact identity 1: enumerate delta subsets of supp(x); delta_i | X ~
  // Bernoulli(X_i/2) independent, so each delta has weight 2^-|supp(x)|.
  {
    rep.identity_quarter_pass = true;
    std::vector<std::uint64_t> pair_count(static_cast<std::size_t>(n) * n);
    for (Bitmask x = 0; x < (Bitmask{1} << n); ++x) {
      if (d.prob(x) == 0.0) continue;
      const int k = std::popcount(x);
      std::fill(pair_count.begin(), pair_count.end(), 0);
      Bitmask delta = x;
      while (true) {
        for (Bitmask bi = delta; bi;) {
          const int i = std::countr_zero(bi);
          bi &= bi - 1;
          for (Bitmask bj = x & ~delta; bj;) {
            const int j = std::countr_zero(bj);
            bj &= bj - 1;
            ++pair_count[static_cast<std::size_t>(i) * n + j];
          }
        }
        if (delta == 0) break;
        delta = (delta - 1) & x;
      }
      RectMatrix lhs(coeffs.dim, coeffs.dim);
      const double w = std::ldexp(1.0, -k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto cnt = pair_count[static_cast<std::size_t>(i) * n + j];
          if (cnt && i != j)
            lhs += (w * static_cast<double>(cnt)) * coeffs.c[static_cast<std::size_t>(i) * n + j];
        }
      RectMatrix rhs = bilinear_sum(coeffs, x, x);
      rhs *= 0.25;
      lhs -= rhs;
      const double dev = kernels::max_abs(lhs.data().data(), lhs.data().size());
      rep.identity_quarter_dev = std::max(rep.identity_quarter_dev, dev);
      if (dev > 1e-12 * scale) rep.identity_quarter_pass = false;
    }
  }

  // Exact identity 2: P(X = m | I = J) == P(X = m | X_J = 1) for every
  // non-empty J with P(I = J) > 0. The left side is assembled from the
  // delta weights 2^-popcount(m) (no homogeneity shortcut), the right from
  // superset masses.
  {
    rep.identity_conditioning_pass = true;
    const std::size_t size = d.probs().size();
    std::vector<double> p_ij(size, 0.0);
    for (Bitmask m = 0; m < size; ++m) {
      const double p = d.prob(m);
      if (p == 0.0) continue;
      const double w = std::ldexp(p, -std::popcount(m));
      Bitmask delta = m;
      while (true) {
        p_ij[static_cast<std::size_t>(delta)] += w;
        if (delta == 0) break;
        delta = (delta - 1) & m;
      }
    }
    const auto mass = all_ones_masses(d);
    const Bitmask full = (Bitmask{1} << n) - 1;
    for (Bitmask j = 1; j <= full; ++j) {
      const double pij = p_ij[static_cast<std::size_t>(j)];
      if (pij <= 0.0) continue;
      const Bitmask free = full & ~j;
      Bitmask s = free;
      while (true) {
        const Bitmask m = j | s;
        const double p = d.prob(m);
        if (p > 0.0) {
          const double lhs = std::ldexp(p, -std::popcount(m)) / pij;
          const double rhs = p / mass[static_cast<std::size_t>(j)];
          const double dev = std::fabs(lhs - rhs);
          rep.identity_conditioning_dev = std::max(rep.identity_conditioning_dev, dev);
          if (dev > 1e-12) rep.identity_conditioning_pass = false;
        }
        if (s == 0) break;
        s = (s - 1) & free;
      }
    }
  }

  // Empirical coupled vs decoupled tails and the measured constant.
  {
    const TableSampler sampler(d);
    std::vector<double> coupled(cfg.n), decoupled(cfg.n);
    parallel_for_blocks(block_count(cfg.n, kReplicateBlock), cfg.threads, [&](std::size_t b) {
      const std::uint64_t lo = b * kReplicateBlock;
      const std::uint64_t hi = std::min<std::uint64_t>(cfg.n, lo + kReplicateBlock);
      for (std::uint64_t i = lo; i < hi; ++i) {
        RngStream rng_c(cfg.seed, i);
        const Bitmask x = sampler.draw(rng_c);
        coupled[i] = spectral_norm(bilinear_sum(coeffs, x, x));
        RngStream rng_d(cfg.seed, cfg.n + i);
        const Bitmask xd = sampler.draw(rng_d);
        const Bitmask yd = sampler.draw(rng_d);
        decoupled[i] = spectral_norm(bilinear_sum(coeffs, xd, yd));
      }
    });

    auto make_report = [&](const std::vector<double>& values) {
      TailReport r;
      r.mode = TailMode::Raw;
      r.t_grid = ts;
      r.n_replicates = cfg.n;
      r.seed = cfg.seed;
      r.alpha = cfg.alpha;
      r.counts.resize(ts.size());
      r.estimate.resize(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        r.counts[i] = kernels::count_geq(values.data(), ts[i], values.size());
        r.estimate[i] = static_cast<double>(r.counts[i]) / static_cast<double>(cfg.n);
      }
      fill_cp_intervals(r);
      return r;
    };
    rep.coupled = make_report(coupled);
    rep.decoupled = make_report(decoupled);

    rep.c0_grid = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    for (double c0 : rep.c0_grid) {
      bool ok = true;
      for (std::size_t i = 0; i < ts.size() && ok; ++i) {
        const double lhs = rep.coupled.estimate[i];
        const double rhs =
            c0 * static_cast<double>(kernels::count_geq(decoupled.data(), ts[i] / c0,
                                                        decoupled.size())) /
            static_cast<double>(cfg.n);
        ok = lhs <= rhs + 1e-15;
      }
      rep.c0_ok.push_back(ok ? 1 : 0);
      if (ok && !rep.smallest_c0) rep.smallest_c0 = c0;
    }
  }
  return rep;
}

SubmatrixExperimentReport submatrix_experiment(const SymMatrix& h, const SamplerSpec& spec,
                                               const std::vector<double>& ts, const RunConfig& cfg,
                                               double big_c, double little_c, int table_cap) {
  require_zero_diagonal(h, "submatrix_experiment");
  validate_spec(spec);
  if (scheme_coords(spec) != h.dim())
    throw InputError("submatrix_experiment: sampler dimension does not match H");
  const int d = h.dim();

  SubmatrixExperimentReport rep;
  const StatisticSpec stat{SubmatrixStatistic{h}};

  std::vector<double> values(cfg.n);
  const std::size_t nblocks = block_count(cfg.n, kReplicateBlock);
  std::vector<std::vector<std::uint64_t>> hits(nblocks);
  parallel_for_blocks(nblocks, cfg.threads, [&](std::size_t b) {
    const std::uint64_t lo = b * kReplicateBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(cfg.n, lo + kReplicateBlock);
    auto& local = hits[b];
    local.assign(static_cast<std::size_t>(d), 0);
    for (std::uint64_t i = lo; i < hi; ++i) {
      RngStream rng(cfg.seed, i);
      const Bitmask x = sample(spec, rng);
      for (int c = 0; c < d; ++c)
        if ((x >> c) & 1) ++local[static_cast<std::size_t>(c)];
      values[i] = spectral_norm(evaluate_statistic(stat, x));
    }
  });

  if (d <= table_cap) {
    rep.exact_inclusion = true;
    rep.inclusion = build_distribution(spec, table_cap).inclusion_probabilities();
  } else {
    rep.inclusion.assign(static_cast<std::size_t>(d), 0.0);
    for (const auto& local : hits)
      for (int c = 0; c < d; ++c)
        rep.inclusion[static_cast<std::size_t>(c)] += static_cast<double>(local[static_cast<std::size_t>(c)]);
    for (double& p : rep.inclusion) p /= static_cast<double>(cfg.n);
  }

  rep.params = bounds::submatrix_params(h, rep.inclusion, big_c, little_c);

  rep.tail.mode = TailMode::Raw;
  rep.tail.t_grid = ts;
  rep.tail.n_replicates = cfg.n;
  rep.tail.seed = cfg.seed;
  rep.tail.alpha = cfg.alpha;
  rep.tail.counts.resize(ts.size());
  rep.tail.estimate.resize(ts.size());
  rep.tail.bound.resize(ts.size());
  rep.tail.dominated.resize(ts.size());
  rep.valid.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    rep.tail.counts[i] = kernels::count_geq(values.data(), ts[i], values.size());
    rep.tail.estimate[i] = static_cast<double>(rep.tail.counts[i]) / static_cast<double>(cfg.n);
    const auto bt = bounds::submatrix_tail(ts[i], rep.params, d);
    rep.tail.bound[i] = bt.bound;
    rep.valid[i] = bt.valid ? 1 : 0;
    rep.tail.dominated[i] = rep.tail.estimate[i] <= bt.bound ? 1 : 0;
  }
  fill_cp_intervals(rep.tail);
  return rep;
}

}  // namespace negdep::mc
