#pragma once

#include <variant>
#include <vector>

#include "negdep/cube_distribution.hpp"
#include "negdep/matrix.hpp"

namespace negdep {

// Z = sum_i x_i A_i.
struct LinearStatistic {
  std::vector<SymMatrix> coeffs;
};

// Explicit f: {0,1}^n -> symmetric matrices, one entry per bitmask.
struct TableStatistic {
  int n = 0;
  std::vector<SymMatrix> values;
};

// x -> Lambda_x H Lambda_x for zero-diagonal H.
struct SubmatrixStatistic {
  SymMatrix h;
};

using StatisticSpec = std::variant<LinearStatistic, TableStatistic, SubmatrixStatistic>;

void validate_statistic(const StatisticSpec& stat);
int statistic_coords(const StatisticSpec& stat);
int statistic_dim(const StatisticSpec& stat);
SymMatrix evaluate_statistic(const StatisticSpec& stat, Bitmask x);

// Requires exactly zero diagonal; throws InputError.
void require_zero_diagonal(const SymMatrix& h, const char* what);

}  // namespace negdep
