#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "negdep/cube_distribution.hpp"
#include "negdep/graph.hpp"
#include "negdep/matrix.hpp"
#include "negdep/rng.hpp"

namespace negdep {

struct IidScheme {
  std::vector<double> p;  // p_i in [0,1]
};

struct UniformKScheme {
  int n = 0;
  int k = 0;
};

// Independent Bernoulli(pi_i) conditioned on the total being k
// (rejective / conditional Poisson sampling). pi_i in (0,1).
struct ConditionedBernoulliScheme {
  std::vector<double> pi;
  int k = 0;
  std::uint64_t max_attempts = 1'000'000;
};

// Determinantal measure with projection kernel K (K^2 ~ K); homogeneous of
// degree rank(K) = round(trace K).
struct ProjectionDppScheme {
  SymMatrix kernel;
};

// Uniform spanning tree; coordinates are edges of the graph.
struct SpanningTreeScheme {
  Graph graph;
};

using SamplerSpec = std::variant<IidScheme, UniformKScheme, ConditionedBernoulliScheme,
                                 ProjectionDppScheme, SpanningTreeScheme>;

// Number of binary coordinates the scheme produces.
int scheme_coords(const SamplerSpec& spec);

// Validates scheme invariants; throws InputError.
void validate_spec(const SamplerSpec& spec);

// Exact probability table (enumeration); InputError when the dimension
// exceeds the cap or the scheme's table is infeasible (disconnected graph,
// non-projection kernel, conditioning event of probability zero, spanning
// tree enumeration beyond 16 edges).
CubeDistribution build_distribution(const SamplerSpec& spec, int cap = CubeDistribution::kDefaultCap);

// One draw; consumes the stream deterministically.
Bitmask sample(const SamplerSpec& spec, RngStream& rng);

// Convenience: one draw from stream (seed, 0).
Bitmask sample_once(const SamplerSpec& spec, std::uint64_t seed);

// Tree count of the complete graph K_m is m^(m-2); used in tests.
std::uint64_t count_spanning_trees(const Graph& g);

}  // namespace negdep
