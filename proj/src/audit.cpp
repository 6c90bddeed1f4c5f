#include "negdep/audit.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <optional>
#include <functional>
#include <cmath>

#include "negdep/errors.hpp"
#include "negdep/maxflow.hpp"
#include "negdep/rng.hpp"
#include "negdep/thread_pool.hpp"

namespace negdep::audit {

namespace {

std::vector<int> mask_bits(Bitmask m) {
  std::vector<int> bits;
  while (m) {
    bits.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return bits;
}

Bitmask extract_bits(Bitmask m, const std::vector<int>& coords) {
  Bitmask out = 0;
  for (std::size_t t = 0; t < coords.size(); ++t)
    if ((m >> coords[t]) & 1) out |= Bitmask{1} << t;
  return out;
}

// Accumulates P(match), P(X_i=1, match) and P(X_i=1, X_j=1, match) over the
// masks with (m & lambda) == sigma.
struct EventStats {
  double total = 0.0;
  std::vector<double> single;
  std::vector<double> pair;  // n x n, row-major

  EventStats(const CubeDistribution& d, Bitmask lambda, Bitmask sigma) {
    const int n = d.n();
    single.assign(static_cast<std::size_t>(n), 0.0);
    pair.assign(static_cast<std::size_t>(n) * n, 0.0);
    const Bitmask full = (Bitmask{1} << n) - 1;
    const Bitmask free = full & ~lambda;
    // Iterate submasks of the free coordinates; s = 0 must be included.
    Bitmask s = free;
    while (true) {
      const Bitmask m = sigma | s;
      const double p = d.prob(m);
      if (p > 0.0) {
        total += p;
        const auto bits = mask_bits(m);
        for (int bi : bits) {
          single[static_cast<std::size_t>(bi)] += p;
          for (int bj : bits) pair[static_cast<std::size_t>(bi) * n + bj] += p;
        }
      }
      if (s == 0) break;
      s = (s - 1) & free;
    }
  }
};

RectMatrix psi_from_stats(const EventStats& st, int n) {
  RectMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const double p1 = st.single[static_cast<std::size_t>(i)];
    const double p0 = st.total - p1;
    if (p1 <= 0.0 || p0 <= 0.0) continue;  // row stays zero by convention
    for (int j = 0; j < n; ++j) {
      const double joint = st.pair[static_cast<std::size_t>(i) * n + j];
      out(i, j) = joint / p1 - (st.single[static_cast<std::size_t>(j)] - joint) / p0;
    }
  }
  return out;
}

}  // namespace

RectMatrix psi_matrix(const CubeDistribution& d, Bitmask lambda, Bitmask sigma) {
  if ((sigma & ~lambda) != 0) throw InputError("psi_matrix: sigma outside lambda");
  EventStats st(d, lambda, sigma);
  return psi_from_stats(st, d.n());
}

RectMatrix iota_matrix(const CubeDistribution& d, Bitmask lambda) {
  const int n = d.n();
  const auto mass = all_ones_masses(d);
  RectMatrix out(n, n);
  const double m_lambda = mass[static_cast<std::size_t>(lambda)];
  if (m_lambda <= 0.0) return out;
  for (int i = 0; i < n; ++i) {
    const Bitmask li = lambda | (Bitmask{1} << i);
    const double m_li = mass[static_cast<std::size_t>(li)];
    if (m_li <= 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const Bitmask bj = Bitmask{1} << j;
      out(i, j) = mass[static_cast<std::size_t>(li | bj)] / m_li -
                  mass[static_cast<std::size_t>(lambda | bj)] / m_lambda;
    }
  }
  return out;
}

namespace {

double row_abs_sums_max(const RectMatrix& m, int* argmax_row) {
  double best = 0.0;
  *argmax_row = 0;
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += std::fabs(m(i, j));
    if (s > best) {
      best = s;
      *argmax_row = i;
    }
  }
  return best;
}

// The conditioning sets are independent subproblems; both maximizations
// split the Lambda range into fixed blocks and merge block maxima in index
// order, so the result (witness included) never depends on scheduling.

DependenceValue merge_lambda_blocks(std::size_t lambdas, int threads,
                                    const std::function<DependenceValue(Bitmask, Bitmask)>& scan) {
  constexpr std::size_t kLambdaBlock = 256;
  const std::size_t nblocks = (lambdas + kLambdaBlock - 1) / kLambdaBlock;
  std::vector<DependenceValue> partial(nblocks);
  parallel_for_blocks(nblocks, threads, [&](std::size_t b) {
    const Bitmask lo = static_cast<Bitmask>(b * kLambdaBlock);
    const Bitmask hi = static_cast<Bitmask>(std::min(lambdas, (b + 1) * kLambdaBlock));
    partial[b] = scan(lo, hi);
  });
  DependenceValue best;
  for (const auto& p : partial)
    if (p.value > best.value) best = p;
  return best;
}

DependenceValue one_sided_D(const CubeDistribution& d, int threads) {
  const int n = d.n();
  const auto mass = all_ones_masses(d);
  return merge_lambda_blocks(
      std::size_t{1} << n, threads, [&](Bitmask lo, Bitmask hi) {
        DependenceValue best;
        for (Bitmask lambda = lo; lambda < hi; ++lambda) {
          const double m_lambda = mass[static_cast<std::size_t>(lambda)];
          if (m_lambda <= 0.0) continue;
          for (int i = 0; i < n; ++i) {
            const Bitmask li = lambda | (Bitmask{1} << i);
            const double m_li = mass[static_cast<std::size_t>(li)];
            if (m_li <= 0.0) continue;
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
              const Bitmask bj = Bitmask{1} << j;
              row += std::fabs(mass[static_cast<std::size_t>(li | bj)] / m_li -
                               mass[static_cast<std::size_t>(lambda | bj)] / m_lambda);
            }
            if (row > best.value) best = {row, lambda, lambda, i};
          }
        }
        return best;
      });
}

DependenceValue two_sided_D(const CubeDistribution& d, int threads) {
  const int n = d.n();
  return merge_lambda_blocks(
      std::size_t{1} << n, threads, [&](Bitmask lo, Bitmask hi) {
        DependenceValue best;
        for (Bitmask lambda = lo; lambda < hi; ++lambda) {
          // sigma runs over all subsets of lambda.
          Bitmask sigma = lambda;
          while (true) {
            EventStats st(d, lambda, sigma);
            if (st.total > 0.0) {
              const RectMatrix psi = psi_from_stats(st, n);
              int row = 0;
              const double norm = row_abs_sums_max(psi, &row);
              if (norm > best.value) best = {norm, lambda, sigma, row};
            }
            if (sigma == 0) break;
            sigma = (sigma - 1) & lambda;
          }
        }
        return best;
      });
}

}  // namespace

DependenceValue ell_inf_D(const CubeDistribution& d, Side side, const AuditCaps& caps) {
  const int cap = side == Side::One ? caps.one_sided : caps.two_sided;
  if (d.n() > cap) throw InputError("ell_inf_D: n exceeds audit cap");
  return side == Side::One ? one_sided_D(d, caps.threads) : two_sided_D(d, caps.threads);
}

AvMaxResult avmax_check(const CubeDistribution& d, double big_d, double tol) {
  if (!d.homogeneity() || *d.homogeneity() < 1)
    throw InputError("avmax_check: requires a k-homogeneous distribution, k >= 1");
  const int n = d.n();
  EventStats st(d, 0, 0);  // unconditioned single/pair masses
  const auto& p = d.inclusion_probabilities();
  AvMaxResult out;
  out.pass = true;
  out.lhs.assign(static_cast<std::size_t>(n), 0.0);
  out.margins.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double lhs = 0.0;
    for (int v = 0; v < n; ++v) {
      const double pv = p[static_cast<std::size_t>(v)];
      if (pv <= 0.0) continue;
      const double cond = st.pair[static_cast<std::size_t>(i) * n + v] / pv;
      lhs += pv * std::fabs(cond - p[static_cast<std::size_t>(i)]);
    }
    out.lhs[static_cast<std::size_t>(i)] = lhs;
    out.margins[static_cast<std::size_t>(i)] = big_d * p[static_cast<std::size_t>(i)] + tol - lhs;
    if (out.margins[static_cast<std::size_t>(i)] < 0.0) out.pass = false;
  }
  return out;
}

namespace {

// Upper sets of {0,1}^m encoded as bitmasks over the 2^m patterns
// (bit b set <=> pattern b belongs). Built by the standard recursion: an
// upper set on m coordinates is a pair (U0, U1) of upper sets on m-1
// coordinates with U0 a subset of U1.
const std::vector<std::uint32_t>& upper_sets(int m) {
  static std::vector<std::vector<std::uint32_t>> cache = [] {
    std::vector<std::vector<std::uint32_t>> lists;
    lists.push_back({0u, 1u});  // m = 0: empty set, {()}
    for (int m = 1; m <= 5; ++m) {
      const auto& prev = lists.back();
      const int half = 1 << (m - 1);
      std::vector<std::uint32_t> cur;
      for (std::uint32_t lo : prev)
        for (std::uint32_t hi : prev)
          if ((lo & ~hi) == 0) cur.push_back(lo | (hi << half));
      lists.push_back(std::move(cur));
    }
    return lists;
  }();
  return cache[static_cast<std::size_t>(m)];
}

std::vector<Bitmask> set_bits_as_masks(std::uint64_t set, int /*patterns*/) {
  std::vector<Bitmask> out;
  while (set) {
    out.push_back(static_cast<Bitmask>(std::countr_zero(set)));
    set &= set - 1;
  }
  return out;
}

// Maximizer for sum_{b in V} g[b] over up-closed V in the cube poset on
// mbits coordinates. Small cubes enumerate the upper sets directly; larger
// ones solve the max-weight-closure min-cut (picking b forces every b|bit),
// with the graph topology built once and capacities reset per query.
class UpperSetMaximizer {
 public:
  explicit UpperSetMaximizer(int mbits)
      : mbits_(mbits), patterns_(std::size_t{1} << mbits) {
    if (mbits_ <= 5) return;
    const int source = static_cast<int>(patterns_);
    const int sink = source + 1;
    flow_.emplace(sink + 2);
    source_edges_.reserve(patterns_);
    sink_edges_.reserve(patterns_);
    for (std::size_t b = 0; b < patterns_; ++b) {
      source_edges_.push_back(flow_->add_edge(source, static_cast<int>(b), 0.0));
      sink_edges_.push_back(flow_->add_edge(static_cast<int>(b), sink, 0.0));
      for (int i = 0; i < mbits_; ++i) {
        const std::size_t up = b | (std::size_t{1} << i);
        if (up != b)
          closure_edges_.push_back(flow_->add_edge(static_cast<int>(b), static_cast<int>(up), 0.0));
      }
    }
  }

  double maximize(const std::vector<double>& g, std::vector<Bitmask>* out_v) {
    if (mbits_ <= 5) {
      // Subset sums per byte turn each candidate into four table lookups.
      double bytes[4][256];
      const int nbytes = static_cast<int>((patterns_ + 7) / 8);
      for (int pos = 0; pos < nbytes; ++pos) {
        bytes[pos][0] = 0.0;
        for (std::uint32_t m = 1; m < 256; ++m) {
          const std::size_t bit = static_cast<std::size_t>(8 * pos + std::countr_zero(m));
          bytes[pos][m] =
              bytes[pos][m & (m - 1)] + (bit < patterns_ ? g[bit] : 0.0);
        }
      }
      double best = 0.0;
      std::uint64_t best_set = 0;
      for (std::uint32_t v : upper_sets(mbits_)) {
        double s = bytes[0][v & 0xff];
        if (nbytes > 1) s += bytes[1][(v >> 8) & 0xff];
        if (nbytes > 2) s += bytes[2][(v >> 16) & 0xff];
        if (nbytes > 3) s += bytes[3][(v >> 24) & 0xff];
        if (s > best) {
          best = s;
          best_set = v;
        }
      }
      *out_v = set_bits_as_masks(best_set, static_cast<int>(patterns_));
      return best;
    }
    constexpr double inf = 1e30;
    const int source = static_cast<int>(patterns_);
    double total_pos = 0.0;
    for (std::size_t b = 0; b < patterns_; ++b) {
      const double gb = g[b];
      flow_->set_capacity(source_edges_[b], gb > 0.0 ? gb : 0.0);
      flow_->set_capacity(sink_edges_[b], gb < 0.0 ? -gb : 0.0);
      if (gb > 0.0) total_pos += gb;
    }
    for (std::size_t e : closure_edges_) flow_->set_capacity(e, inf);
    const double cut = flow_->run(source, static_cast<int>(patterns_) + 1);
    const auto side = flow_->min_cut_side(source);
    out_v->clear();
    for (std::size_t b = 0; b < patterns_; ++b)
      if (side[b]) out_v->push_back(static_cast<Bitmask>(b));
    return total_pos - cut;
  }

 private:
  int mbits_;
  std::size_t patterns_;
  std::optional<MaxFlow> flow_;
  std::vector<std::size_t> source_edges_, sink_edges_, closure_edges_;
};

}  // namespace

namespace {

// Worst upper-set pair for one partition; the smaller side is enumerated,
// the larger side maximized exactly. Patterns in the witness are local to
// the respective coordinate lists in ascending order.
std::optional<NaWitness> na_check_partition(const CubeDistribution& d, Bitmask block,
                                            double tol) {
  const Bitmask full = (Bitmask{1} << d.n()) - 1;
  const Bitmask other = full & ~block;
  const bool swapped = std::popcount(block) > std::popcount(other);
  const Bitmask small_mask = swapped ? other : block;
  const Bitmask large_mask = swapped ? block : other;
  const auto small_coords = mask_bits(small_mask);
  const auto large_coords = mask_bits(large_mask);
  const int sa = static_cast<int>(small_coords.size());
  const int sb = static_cast<int>(large_coords.size());
  const std::size_t pa = std::size_t{1} << sa, pb = std::size_t{1} << sb;

  std::vector<double> joint(pa * pb, 0.0), ma(pa, 0.0), mb(pb, 0.0);
  for (std::size_t m = 0; m <= full; ++m) {
    const double p = d.prob(m);
    if (p == 0.0) continue;
    const auto a = static_cast<std::size_t>(extract_bits(m, small_coords));
    const auto b = static_cast<std::size_t>(extract_bits(m, large_coords));
    joint[a * pb + b] += p;
    ma[a] += p;
    mb[b] += p;
  }

  UpperSetMaximizer maximizer(sb);
  std::vector<double> g(pb);
  for (std::uint32_t u : upper_sets(sa)) {
    if (u == 0 || u + 1 == (std::uint64_t{1} << pa)) continue;  // constant indicator
    std::fill(g.begin(), g.end(), 0.0);
    double pu = 0.0;
    for (std::uint64_t set = u; set;) {
      const auto a = static_cast<std::size_t>(std::countr_zero(set));
      set &= set - 1;
      pu += ma[a];
      for (std::size_t b = 0; b < pb; ++b) g[b] += joint[a * pb + b];
    }
    double pos_mass = 0.0;
    for (std::size_t b = 0; b < pb; ++b) {
      g[b] -= pu * mb[b];
      if (g[b] > 0.0) pos_mass += g[b];
    }
    if (pos_mass <= tol) continue;  // no subset, upper or not, can exceed tol
    std::vector<Bitmask> v;
    const double cov = maximizer.maximize(g, &v);
    if (cov > tol) {
      NaWitness w;
      w.block = small_mask;
      w.upper_i = set_bits_as_masks(u, static_cast<int>(pa));
      w.upper_ic = v;
      w.covariance = cov;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace

NaResult na_audit(const CubeDistribution& d, const AuditCaps& caps) {
  const int n = d.n();
  if (n > caps.na) throw InputError("na_audit: n exceeds cap");
  NaResult out;
  out.pass = true;
  if (n < 2) return out;
  const Bitmask full = (Bitmask{1} << n) - 1;
  constexpr double tol = 1e-12;
  // Unordered partitions: force coordinate 0 into I. Partitions are
  // independent subproblems; the reported witness is the one with the
  // lowest partition index, whatever the scheduling.
  std::vector<Bitmask> partitions;
  for (Bitmask block = 1; block < full; block += 2) partitions.push_back(block);
  std::vector<std::optional<NaWitness>> findings(partitions.size());
  parallel_for_blocks(partitions.size(), caps.threads, [&](std::size_t i) {
    findings[i] = na_check_partition(d, partitions[i], tol);
  });
  for (const auto& w : findings) {
    if (w) {
      out.pass = false;
      out.witness = w;
      return out;
    }
  }
  return out;
}

namespace {

// Coupling supported on the covering relation exists iff the bipartite
// transportation problem between the two conditional laws is feasible.
bool covering_coupling_exists(const std::vector<std::pair<Bitmask, double>>& y_side,
                              const std::vector<std::pair<Bitmask, double>>& x_side,
                              Bitmask free_mask) {
  const int ny = static_cast<int>(y_side.size());
  const int nx = static_cast<int>(x_side.size());
  const int source = ny + nx;
  const int sink = source + 1;
  MaxFlow flow(sink + 1);
  for (int a = 0; a < ny; ++a) flow.add_edge(source, a, y_side[static_cast<std::size_t>(a)].second);
  for (int b = 0; b < nx; ++b) flow.add_edge(ny + b, sink, x_side[static_cast<std::size_t>(b)].second);
  for (int a = 0; a < ny; ++a) {
    const Bitmask w = y_side[static_cast<std::size_t>(a)].first & free_mask;
    for (int b = 0; b < nx; ++b) {
      const Bitmask q = x_side[static_cast<std::size_t>(b)].first & free_mask;
      // w covers q: w == q, or w == q + e_j.
      if ((q & ~w) == 0 && std::popcount(w ^ q) <= 1) flow.add_edge(a, ny + b, 2.0);
    }
  }
  return flow.run(source, sink) >= 1.0 - 1e-12;
}

}  // namespace

ScpResult scp_audit(const CubeDistribution& d, const AuditCaps& caps) {
  const int n = d.n();
  if (n > caps.scp) throw InputError("scp_audit: n exceeds cap");
  ScpResult out;
  out.pass = true;
  const Bitmask full = (Bitmask{1} << n) - 1;
  for (Bitmask lambda = 1; lambda < full; ++lambda) {
    const Bitmask free_mask = full & ~lambda;
    // Pattern mass and per-pattern supports of the conditional laws.
    const std::size_t np = std::size_t{1} << std::popcount(lambda);
    std::vector<double> pat_mass(np, 0.0);
    std::vector<std::vector<std::pair<Bitmask, double>>> support(np);
    const auto lambda_coords = mask_bits(lambda);
    for (std::size_t m = 0; m <= full; ++m) {
      const double p = d.prob(m);
      if (p == 0.0) continue;
      const auto pat = static_cast<std::size_t>(extract_bits(m, lambda_coords));
      pat_mass[pat] += p;
      support[pat].emplace_back(m, p);
    }
    for (std::size_t pat = 0; pat < np; ++pat) {
      if (pat_mass[pat] <= 0.0) continue;
      for (std::size_t t = 0; t < lambda_coords.size(); ++t) {
        if ((pat >> t) & 1) continue;
        const std::size_t pat_x = pat | (std::size_t{1} << t);
        if (pat_mass[pat_x] <= 0.0) continue;
        auto y_side = support[pat];
        auto x_side = support[pat_x];
        for (auto& e : y_side) e.second /= pat_mass[pat];
        for (auto& e : x_side) e.second /= pat_mass[pat_x];
        if (!covering_coupling_exists(y_side, x_side, free_mask)) {
          out.pass = false;
          // Patterns are local: bit t refers to the t-th lowest coordinate
          // of lambda.
          out.witness = ScpWitness{lambda, static_cast<Bitmask>(pat_x), static_cast<Bitmask>(pat)};
          return out;
        }
      }
    }
  }
  return out;
}

namespace {

struct PolyEval {
  double f = 0.0;
  std::vector<double> df;
  std::vector<double> d2f;  // n x n, zero diagonal
};

PolyEval evaluate_generating_polynomial(const CubeDistribution& d, const std::vector<double>& x) {
  const int n = d.n();
  PolyEval out;
  out.df.assign(static_cast<std::size_t>(n), 0.0);
  out.d2f.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (std::size_t m = 0; m < d.probs().size(); ++m) {
    const double p = d.prob(m);
    if (p == 0.0) continue;
    const auto bits = mask_bits(m);
    int zeros = 0;
    double prod_nz = 1.0;
    for (int b : bits) {
      const double xv = x[static_cast<std::size_t>(b)];
      if (xv == 0.0)
        ++zeros;
      else
        prod_nz *= xv;
    }
    if (zeros == 0) out.f += p * prod_nz;
    for (std::size_t a = 0; a < bits.size(); ++a) {
      const double xa = x[static_cast<std::size_t>(bits[a])];
      const int za = xa == 0.0 ? 1 : 0;
      if (zeros == za) out.df[static_cast<std::size_t>(bits[a])] += p * (za ? prod_nz : prod_nz / xa);
      for (std::size_t b = a + 1; b < bits.size(); ++b) {
        const double xb = x[static_cast<std::size_t>(bits[b])];
        const int zab = za + (xb == 0.0 ? 1 : 0);
        if (zeros != zab) continue;
        double val = prod_nz;
        if (xa != 0.0) val /= xa;
        if (xb != 0.0) val /= xb;
        out.d2f[static_cast<std::size_t>(bits[a]) * n + bits[b]] += p * val;
        out.d2f[static_cast<std::size_t>(bits[b]) * n + bits[a]] += p * val;
      }
    }
  }
  return out;
}

}  // namespace

RayleighResult rayleigh_spot_check(const CubeDistribution& d,
                                   const std::vector<std::vector<double>>& points,
                                   RayleighDomain) {
  const int n = d.n();
  RayleighResult out;
  out.pass = true;
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != n)
      throw InputError("rayleigh_spot_check: point dimension mismatch");
    const PolyEval e = evaluate_generating_polynomial(d, x);
    ++out.points_checked;
    for (int i = 0; i < n && out.pass; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;  // d2f_ii = 0 for multilinear F
        const double lhs = e.f * e.d2f[static_cast<std::size_t>(i) * n + j];
        const double rhs = e.df[static_cast<std::size_t>(i)] * e.df[static_cast<std::size_t>(j)];
        const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        if (lhs > rhs + 1e-10 * scale) {
          out.pass = false;
          out.witness = RayleighWitness{i, j, x, lhs, rhs};
          break;
        }
      }
    }
    if (!out.pass) break;
  }
  return out;
}

std::vector<std::vector<double>> default_rayleigh_points(int n, RayleighDomain domain,
                                                         std::uint64_t seed) {
  std::vector<std::vector<double>> pts;
  if (n <= 15) {
    for (Bitmask m = 0; m < (Bitmask{1} << n); ++m) {
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (m >> i) & 1 ? 1.0 : 0.0;
      pts.push_back(std::move(x));
    }
  }
  RngStream rng(seed, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = 2.0 * rng.next_double();
    pts.push_back(std::move(x));
  }
  if (domain == RayleighDomain::Real) {
    RngStream rng2(seed, 2);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& v : x) v = 2.0 * rng2.next_double() - 1.0;
      pts.push_back(std::move(x));
    }
  }
  return pts;
}

DependenceReport run_audit(const CubeDistribution& d, const AuditCaps& caps) {
  using clock = std::chrono::steady_clock;
  DependenceReport rep;
  auto timed = [](auto&& fn) {
    const auto t0 = clock::now();
    fn();
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  if (d.n() <= caps.one_sided)
    rep.runtimes_s["one_sided_D"] = timed([&] { rep.one_sided = ell_inf_D(d, Side::One, caps); });
  if (d.n() <= caps.two_sided)
    rep.runtimes_s["two_sided_D"] = timed([&] { rep.two_sided = ell_inf_D(d, Side::Two, caps); });
  if (d.n() <= caps.na)
    rep.runtimes_s["na"] = timed([&] { rep.na = na_audit(d, caps); });
  if (d.n() <= caps.scp)
    rep.runtimes_s["scp"] = timed([&] { rep.scp = scp_audit(d, caps); });
  if (d.n() <= caps.rayleigh)
    rep.runtimes_s["rayleigh"] = timed([&] {
      rep.rayleigh = rayleigh_spot_check(d, default_rayleigh_points(d.n(), RayleighDomain::NonNegative));
    });
  if (d.homogeneity() && *d.homogeneity() >= 1 && rep.one_sided) {
    rep.runtimes_s["avmax"] =
        timed([&] { rep.avmax = avmax_check(d, rep.one_sided->value); });
    rep.lemma_checks["avmax_with_one_sided_D"] = rep.avmax->pass;
    if (!d.is_dirac())
      rep.lemma_checks["one_sided_D_at_least_1"] = rep.one_sided->value >= 1.0 - 1e-12;
  }
  if (rep.one_sided && rep.two_sided)
    rep.lemma_checks["one_sided_le_two_sided"] =
        rep.one_sided->value <= rep.two_sided->value + 1e-12;
  if (rep.scp && rep.scp->pass && rep.two_sided && d.homogeneity())
    rep.lemma_checks["scp_two_sided_D_le_2"] = rep.two_sided->value <= 2.0 + 1e-12;
  if (rep.scp && rep.scp->pass && rep.na)
    rep.lemma_checks["scp_implies_na"] = rep.na->pass;
  return rep;
}

}  // namespace negdep::audit
