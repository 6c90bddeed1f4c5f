#include "negdep/statistic.hpp"

#include <bit>

#include "negdep/errors.hpp"

namespace negdep {

void require_zero_diagonal(const SymMatrix& h, const char* what) {
  for (int i = 0; i < h.dim(); ++i)
    if (h(i, i) != 0.0) throw InputError(std::string(what) + ": diagonal must be exactly zero");
}

void validate_statistic(const StatisticSpec& stat) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearStatistic>) {
          if (s.coeffs.empty()) throw InputError("linear statistic: no coefficient matrices");
          for (const auto& m : s.coeffs)
            if (m.dim() != s.coeffs.front().dim())
              throw InputError("linear statistic: coefficient dimensions differ");
        } else if constexpr (std::is_same_v<T, TableStatistic>) {
          if (s.n < 1 || s.values.size() != (std::size_t{1} << s.n))
            throw InputError("table statistic: need 2^n matrices");
          for (const auto& m : s.values)
            if (m.dim() != s.values.front().dim())
              throw InputError("table statistic: value dimensions differ");
        } else {
          require_zero_diagonal(s.h, "submatrix statistic");
        }
      },
      stat);
}

int statistic_coords(const StatisticSpec& stat) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearStatistic>)
          return static_cast<int>(s.coeffs.size());
        else if constexpr (std::is_same_v<T, TableStatistic>)
          return s.n;
        else
          return s.h.dim();
      },
      stat);
}

int statistic_dim(const StatisticSpec& stat) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearStatistic>)
          return s.coeffs.front().dim();
        else if constexpr (std::is_same_v<T, TableStatistic>)
          return s.values.front().dim();
        else
          return s.h.dim();
      },
      stat);
}

SymMatrix evaluate_statistic(const StatisticSpec& stat, Bitmask x) {
  return std::visit(
      [x](const auto& s) -> SymMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearStatistic>) {
          SymMatrix acc(s.coeffs.front().dim());
          for (std::size_t i = 0; i < s.coeffs.size(); ++i)
            if ((x >> i) & 1) acc += s.coeffs[i];
          return acc;
        } else if constexpr (std::is_same_v<T, TableStatistic>) {
          return s.values[static_cast<std::size_t>(x)];
        } else {
          const int d = s.h.dim();
          SymMatrix out(d);
          for (int i = 0; i < d; ++i) {
            if (!((x >> i) & 1)) continue;
            for (int j = i + 1; j < d; ++j)
              if ((x >> j) & 1) out.set(i, j, s.h(i, j));
          }
          return out;
        }
      },
      stat);
}

}  // namespace negdep
