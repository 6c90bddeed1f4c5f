#pragma once

#include <cstddef>
#include <vector>

namespace negdep {

class SymMatrix;

// Dense rectangular matrix, row-major storage. Entries must be finite.
class RectMatrix {
 public:
  RectMatrix() = default;
  RectMatrix(int rows, int cols);  // zero-filled
  RectMatrix(int rows, int cols, std::vector<double> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  RectMatrix transposed() const;
  bool is_zero() const;

  RectMatrix& operator+=(const RectMatrix& o);
  RectMatrix& operator-=(const RectMatrix& o);
  RectMatrix& operator*=(double s);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

RectMatrix operator+(RectMatrix a, const RectMatrix& b);
RectMatrix operator-(RectMatrix a, const RectMatrix& b);
RectMatrix operator*(double s, RectMatrix a);
RectMatrix matmul(const RectMatrix& a, const RectMatrix& b);

// Dense symmetric matrix. Construction symmetrizes ((M + M^T)/2), so the
// stored entries satisfy entries[i][j] == entries[j][i] exactly; downstream
// products like conjugations by diagonal masks may carry tiny skew and are
// absorbed here rather than rejected.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);  // zero-filled
  SymMatrix(int dim, std::vector<double> entries);
  explicit SymMatrix(const RectMatrix& m);  // requires square

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(const std::vector<double>& d);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
  // Assigns entry (i,j) and its mirror (j,i).
  void set(int i, int j, double v);
  const std::vector<double>& data() const { return data_; }

  RectMatrix as_rect() const;
  double trace() const;
  bool is_zero() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

 private:
  int dim_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

// A * A (symmetric for symmetric A).
SymMatrix sym_square(const SymMatrix& a);
// A*B + B*A.
SymMatrix jordan_product_twice(const SymMatrix& a, const SymMatrix& b);
// General product of symmetric matrices (not symmetric in general).
RectMatrix sym_matmul(const SymMatrix& a, const SymMatrix& b);

}  // namespace negdep
