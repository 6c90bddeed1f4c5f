#include "negdep/sampler.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "negdep/errors.hpp"
#include "negdep/kernels.hpp"
#include "negdep/linalg.hpp"

namespace negdep {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

double det_in_place(std::vector<std::vector<double>>& m) {
  const int k = static_cast<int>(m.size());
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::fabs(m[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
        pivot = r;
    if (m[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(col)]);
      det = -det;
    }
    const double p = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    det *= p;
    for (int r = col + 1; r < k; ++r) {
      const double f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
      if (f == 0.0) continue;
      for (int c = col; c < k; ++c)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
    }
  }
  return det;
}

int dpp_rank(const SymMatrix& kernel) {
  const double tr = kernel.trace();
  const int r = static_cast<int>(std::llround(tr));
  if (std::fabs(tr - r) > 1e-6 || r < 0 || r > kernel.dim())
    throw InputError("projection_dpp: kernel trace is not close to an integer rank");
  return r;
}

void check_projection(const SymMatrix& kernel) {
  const SymMatrix residual = sym_square(kernel) - kernel;
  const double scale = std::max(1.0, spectral_norm(kernel));
  if (spectral_norm(residual) > 1e-8 * scale)
    throw InputError("projection_dpp: kernel is not a projection (||K^2 - K|| too large)");
}

std::vector<double> normalized(std::vector<double> probs, const char* what) {
  const double total = compensated_sum(probs.data(), probs.size());
  if (total <= 0.0) throw InputError(std::string(what) + ": distribution has zero total mass");
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace

int scheme_coords(const SamplerSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidScheme>)
          return static_cast<int>(s.p.size());
        else if constexpr (std::is_same_v<T, UniformKScheme>)
          return s.n;
        else if constexpr (std::is_same_v<T, ConditionedBernoulliScheme>)
          return static_cast<int>(s.pi.size());
        else if constexpr (std::is_same_v<T, ProjectionDppScheme>)
          return s.kernel.dim();
        else
          return static_cast<int>(s.graph.edges.size());
      },
      spec);
}

void validate_spec(const SamplerSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidScheme>) {
          if (s.p.empty()) throw InputError("iid: empty probability vector");
          for (double p : s.p)
            if (!(p >= 0.0 && p <= 1.0)) throw InputError("iid: p_i must lie in [0,1]");
        } else if constexpr (std::is_same_v<T, UniformKScheme>) {
          if (s.n < 1 || s.k < 0 || s.k > s.n) throw InputError("uniform_k: need 0 <= k <= n");
        } else if constexpr (std::is_same_v<T, ConditionedBernoulliScheme>) {
          if (s.pi.empty()) throw InputError("conditioned_bernoulli: empty pi");
          if (s.k < 0 || s.k > static_cast<int>(s.pi.size()))
            throw InputError("conditioned_bernoulli: need 0 <= k <= n");
          for (double p : s.pi)
            if (!(p > 0.0 && p < 1.0))
              throw InputError("conditioned_bernoulli: pi_i must lie in (0,1)");
        } else if constexpr (std::is_same_v<T, ProjectionDppScheme>) {
          check_projection(s.kernel);
          dpp_rank(s.kernel);
        } else {
          validate_graph(s.graph);
          if (!is_connected(s.graph)) throw InputError("spanning_tree: graph is not connected");
        }
      },
      spec);
}

namespace {

CubeDistribution build_iid(const IidScheme& s) {
  const int n = static_cast<int>(s.p.size());
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (std::size_t m = 0; m < probs.size(); ++m) {
    double p = 1.0;
    for (int i = 0; i < n; ++i)
      p *= (m >> i) & 1 ? s.p[static_cast<std::size_t>(i)] : 1.0 - s.p[static_cast<std::size_t>(i)];
    probs[m] = p;
  }
  return CubeDistribution(n, normalized(std::move(probs), "iid"));
}

CubeDistribution build_uniform_k(const UniformKScheme& s) {
  std::vector<double> probs(std::size_t{1} << s.n, 0.0);
  std::size_t count = 0;
  for (std::size_t m = 0; m < probs.size(); ++m)
    if (std::popcount(m) == s.k) ++count;
  for (std::size_t m = 0; m < probs.size(); ++m)
    if (std::popcount(m) == s.k) probs[m] = 1.0 / static_cast<double>(count);
  return CubeDistribution(s.n, std::move(probs));
}

CubeDistribution build_conditioned_bernoulli(const ConditionedBernoulliScheme& s) {
  const int n = static_cast<int>(s.pi.size());
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (std::size_t m = 0; m < probs.size(); ++m) {
    if (std::popcount(m) != s.k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i)
      p *= (m >> i) & 1 ? s.pi[static_cast<std::size_t>(i)] : 1.0 - s.pi[static_cast<std::size_t>(i)];
    probs[m] = p;
  }
  return CubeDistribution(n, normalized(std::move(probs), "conditioned_bernoulli"));
}

CubeDistribution build_projection_dpp(const ProjectionDppScheme& s) {
  const int n = s.kernel.dim();
  const int r = dpp_rank(s.kernel);
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (std::size_t m = 0; m < probs.size(); ++m) {
    if (std::popcount(m) != r) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) idx.push_back(i);
    std::vector<std::vector<double>> sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        sub[a][b] = s.kernel(idx[a], idx[b]);
    probs[m] = std::fabs(det_in_place(sub));
  }
  return CubeDistribution(n, normalized(std::move(probs), "projection_dpp"));
}

CubeDistribution build_spanning_tree(const SpanningTreeScheme& s) {
  const int m = static_cast<int>(s.graph.edges.size());
  if (m > 16) throw InputError("spanning_tree: explicit table limited to graphs with <= 16 edges");
  const int need = s.graph.vertices - 1;
  std::vector<double> probs(std::size_t{1} << m, 0.0);
  std::size_t trees = 0;
  for (std::size_t mask = 0; mask < probs.size(); ++mask) {
    if (std::popcount(mask) != need) continue;
    Dsu dsu(s.graph.vertices);
    bool acyclic = true;
    for (int e = 0; e < m && acyclic; ++e)
      if ((mask >> e) & 1)
        acyclic = dsu.unite(s.graph.edges[static_cast<std::size_t>(e)].first,
                            s.graph.edges[static_cast<std::size_t>(e)].second);
    if (acyclic) {
      probs[mask] = 1.0;
      ++trees;
    }
  }
  if (trees == 0) throw InputError("spanning_tree: no spanning tree found");
  for (double& p : probs) p /= static_cast<double>(trees);
  return CubeDistribution(m, std::move(probs));
}

}  // namespace

CubeDistribution build_distribution(const SamplerSpec& spec, int cap) {
  validate_spec(spec);
  if (scheme_coords(spec) > cap) {
    std::ostringstream msg;
    msg << "build_distribution: " << scheme_coords(spec) << " coordinates exceed cap " << cap;
    throw InputError(msg.str());
  }
  return std::visit(
      [](const auto& s) -> CubeDistribution {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidScheme>)
          return build_iid(s);
        else if constexpr (std::is_same_v<T, UniformKScheme>)
          return build_uniform_k(s);
        else if constexpr (std::is_same_v<T, ConditionedBernoulliScheme>)
          return build_conditioned_bernoulli(s);
        else if constexpr (std::is_same_v<T, ProjectionDppScheme>)
          return build_projection_dpp(s);
        else
          return build_spanning_tree(s);
      },
      spec);
}

std::uint64_t count_spanning_trees(const Graph& g) {
  const int m = static_cast<int>(g.edges.size());
  if (m > 24) throw InputError("count_spanning_trees: too many edges to enumerate");
  std::uint64_t trees = 0;
  const int need = g.vertices - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (std::popcount(mask) != need) continue;
    Dsu dsu(g.vertices);
    bool acyclic = true;
    for (int e = 0; e < m && acyclic; ++e)
      if ((mask >> e) & 1)
        acyclic = dsu.unite(g.edges[static_cast<std::size_t>(e)].first,
                            g.edges[static_cast<std::size_t>(e)].second);
    if (acyclic) ++trees;
  }
  return trees;
}

namespace {

Bitmask sample_iid(const IidScheme& s, RngStream& rng) {
  Bitmask mask = 0;
  for (std::size_t i = 0; i < s.p.size(); ++i)
    if (rng.bernoulli(s.p[i])) mask |= Bitmask{1} << i;
  return mask;
}

Bitmask sample_uniform_k(const UniformKScheme& s, RngStream& rng) {
  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  std::vector<int> idx(static_cast<std::size_t>(s.n));
  std::iota(idx.begin(), idx.end(), 0);
  Bitmask mask = 0;
  for (int i = 0; i < s.k; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(s.n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    mask |= Bitmask{1} << idx[static_cast<std::size_t>(i)];
  }
  return mask;
}

Bitmask sample_conditioned_bernoulli(const ConditionedBernoulliScheme& s, RngStream& rng) {
  for (std::uint64_t attempt = 1; attempt <= s.max_attempts; ++attempt) {
    Bitmask mask = 0;
    int ones = 0;
    for (std::size_t i = 0; i < s.pi.size(); ++i)
      if (rng.bernoulli(s.pi[i])) {
        mask |= Bitmask{1} << i;
        ++ones;
      }
    if (ones == s.k) return mask;
  }
  std::ostringstream msg;
  msg << "conditioned_bernoulli: no accepted draw in " << s.max_attempts
      << " attempts (acceptance rate below " << 1.0 / static_cast<double>(s.max_attempts)
      << "); raise max_attempts or check (pi, k)";
  throw RangeError(msg.str());
}

// Sequential conditional sampling: marginal P(i in S | decisions so far) is
// the (i,i) entry of the working kernel, which is updated by a Schur
// complement in K (keep i) or K - id (drop i).
Bitmask sample_projection_dpp(const ProjectionDppScheme& s, RngStream& rng) {
  const int n = s.kernel.dim();
  RectMatrix w = s.kernel.as_rect();
  Bitmask mask = 0;
  for (int i = 0; i < n; ++i) {
    const double p = std::min(1.0, std::max(0.0, w(i, i)));
    // Decisions within 1e-9 of certain are forced, keeping the Schur pivot
    // away from zero.
    bool take;
    if (p <= 1e-9)
      take = false;
    else if (p >= 1.0 - 1e-9)
      take = true;
    else
      take = rng.bernoulli(p);
    const double denom = take ? w(i, i) : w(i, i) - 1.0;
    if (take) mask |= Bitmask{1} << i;
    if (std::fabs(denom) < 1e-9) continue;  // forced decision, no update needed
    for (int r = i + 1; r < n; ++r) {
      const double f = w(r, i) / denom;
      if (f == 0.0) continue;
      for (int c = i + 1; c < n; ++c) w(r, c) -= f * w(i, c);
    }
    for (int c = i + 1; c < n; ++c) w(i, c) = 0.0;
    for (int r = i + 1; r < n; ++r) w(r, i) = 0.0;
  }
  return mask;
}

// Wilson's loop-erased random walk gives a uniform spanning tree.
Bitmask sample_spanning_tree(const SpanningTreeScheme& s, RngStream& rng) {
  const Graph& g = s.graph;
  const int nv = g.vertices;
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nv));  // (neighbor, edge)
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(u)].emplace_back(v, e);
    adj[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  std::vector<char> in_tree(static_cast<std::size_t>(nv), 0);
  std::vector<std::pair<int, int>> next(static_cast<std::size_t>(nv), {-1, -1});
  in_tree[0] = 1;
  Bitmask mask = 0;
  for (int start = 1; start < nv; ++start) {
    if (in_tree[static_cast<std::size_t>(start)]) continue;
    int u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      const auto& nbrs = adj[static_cast<std::size_t>(u)];
      const auto pick = nbrs[static_cast<std::size_t>(rng.next_below(nbrs.size()))];
      next[static_cast<std::size_t>(u)] = pick;  // loop erasure: later visits overwrite
      u = pick.first;
    }
    u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      in_tree[static_cast<std::size_t>(u)] = 1;
      mask |= Bitmask{1} << next[static_cast<std::size_t>(u)].second;
      u = next[static_cast<std::size_t>(u)].first;
    }
  }
  return mask;
}

}  // namespace

Bitmask sample(const SamplerSpec& spec, RngStream& rng) {
  return std::visit(
      [&rng](const auto& s) -> Bitmask {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidScheme>)
          return sample_iid(s, rng);
        else if constexpr (std::is_same_v<T, UniformKScheme>)
          return sample_uniform_k(s, rng);
        else if constexpr (std::is_same_v<T, ConditionedBernoulliScheme>)
          return sample_conditioned_bernoulli(s, rng);
        else if constexpr (std::is_same_v<T, ProjectionDppScheme>)
          return sample_projection_dpp(s, rng);
        else
          return sample_spanning_tree(s, rng);
      },
      spec);
}

Bitmask sample_once(const SamplerSpec& spec, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample(spec, rng);
}

}  // namespace negdep
