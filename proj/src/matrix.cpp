#include "negdep/matrix.hpp"

#include <cmath>
#include <string>

#include "negdep/errors.hpp"
#include "negdep/kernels.hpp"

namespace negdep {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite entry");
}

}  // namespace

RectMatrix::RectMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw InputError("RectMatrix: dimensions must be positive");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

RectMatrix::RectMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw InputError("RectMatrix: dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(rows) * cols)
    throw InputError("RectMatrix: entry count does not match rows*cols");
  require_finite(data_, "RectMatrix");
}

RectMatrix RectMatrix::transposed() const {
  RectMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RectMatrix::is_zero() const {
  return kernels::max_abs(data_.data(), data_.size()) == 0.0;
}

RectMatrix& RectMatrix::operator+=(const RectMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("RectMatrix: shape mismatch");
  kernels::axpy(1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

RectMatrix& RectMatrix::operator-=(const RectMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("RectMatrix: shape mismatch");
  kernels::axpy(-1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

RectMatrix& RectMatrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

RectMatrix operator+(RectMatrix a, const RectMatrix& b) { return a += b; }
RectMatrix operator-(RectMatrix a, const RectMatrix& b) { return a -= b; }
RectMatrix operator*(double s, RectMatrix a) { return a *= s; }

RectMatrix matmul(const RectMatrix& a, const RectMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
  RectMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      kernels::axpy(aik, &b.data()[static_cast<std::size_t>(k) * b.cols()],
                    &c.data()[static_cast<std::size_t>(i) * c.cols()],
                    static_cast<std::size_t>(b.cols()));
    }
  return c;
}

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw InputError("SymMatrix: dim must be >= 1");
  data_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymMatrix::SymMatrix(int dim, std::vector<double> entries) : dim_(dim), data_(std::move(entries)) {
  if (dim < 1) throw InputError("SymMatrix: dim must be >= 1");
  if (data_.size() != static_cast<std::size_t>(dim) * dim)
    throw InputError("SymMatrix: entry count does not match dim*dim");
  require_finite(data_, "SymMatrix");
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
      data_[static_cast<std::size_t>(i) * dim_ + j] = m;
      data_[static_cast<std::size_t>(j) * dim_ + i] = m;
    }
}

SymMatrix::SymMatrix(const RectMatrix& m) : SymMatrix(m.rows(), m.data()) {
  if (m.rows() != m.cols()) throw InputError("SymMatrix: input not square");
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  data_[static_cast<std::size_t>(i) * dim_ + j] = v;
  data_[static_cast<std::size_t>(j) * dim_ + i] = v;
}

RectMatrix SymMatrix::as_rect() const { return RectMatrix(dim_, dim_, data_); }

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool SymMatrix::is_zero() const {
  return kernels::max_abs(data_.data(), data_.size()) == 0.0;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (dim_ != o.dim_) throw InputError("SymMatrix: dim mismatch");
  kernels::axpy(1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (dim_ != o.dim_) throw InputError("SymMatrix: dim mismatch");
  kernels::axpy(-1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

RectMatrix sym_matmul(const SymMatrix& a, const SymMatrix& b) {
  return matmul(a.as_rect(), b.as_rect());
}

SymMatrix sym_square(const SymMatrix& a) { return SymMatrix(sym_matmul(a, a)); }

SymMatrix jordan_product_twice(const SymMatrix& a, const SymMatrix& b) {
  RectMatrix ab = sym_matmul(a, b);
  return SymMatrix(ab + ab.transposed());
}

}  // namespace negdep
