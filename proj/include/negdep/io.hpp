#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "negdep/cube_distribution.hpp"
#include "negdep/matrix.hpp"
#include "negdep/sampler.hpp"

namespace negdep::io {

// Shortest decimal that round-trips the double (up to 17 significant
// digits).
std::string format_double(double x);

// Structured matrix file: "rows R", "cols C", then R*C whitespace-separated
// entries, repeated for lists (an optional leading "count N" is validated).
// Files ending in .csv hold one comma-separated row per line instead.
RectMatrix read_matrix(const std::string& path);
std::vector<RectMatrix> read_matrix_list(const std::string& path);
void write_matrix(const std::string& path, const RectMatrix& m);
void write_matrix_list(const std::string& path, const std::vector<RectMatrix>& ms);

// Distribution-spec file: "scheme <tag>" plus the scheme's parameters
//   iid:                     p <decimals>
//   uniform_k:               n <int>, k <int>
//   conditioned_bernoulli:   k <int>, pi <decimals> [, max_attempts <int>]
//   projection_dpp:          dim <int>, kernel, then dim*dim entries
//   spanning_tree:           vertices <int>, edges, then "u v" per line
SamplerSpec read_sampler_spec(const std::string& path);
void write_sampler_spec(const std::string& path, const SamplerSpec& spec);

// CSV with header "bitmask,probability"; bitmask prints coordinate 0 first.
void write_table_csv(const std::string& path, const CubeDistribution& d);

std::string mask_to_string(Bitmask m, int n);

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_file_hex(const std::string& path);

}  // namespace negdep::io
