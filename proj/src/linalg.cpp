#include "negdep/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "negdep/errors.hpp"
#include "negdep/kernels.hpp"

namespace negdep {

namespace {

Eigen::MatrixXd to_eigen(const SymMatrix& a) {
  const int d = a.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = a(i, j);
  return m;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(const SymMatrix& a, bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(to_eigen(a), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw RangeError("eigensolver did not converge");
  return es;
}

SymMatrix apply_spectral(const SymMatrix& a, double (*fn)(double)) {
  auto es = solve(a, true);
  const int d = a.dim();
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < d; ++i) vals(i) = fn(vals(i));
  Eigen::MatrixXd m = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
  std::vector<double> out(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i) * d + j] = m(i, j);
  return SymMatrix(d, std::move(out));
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& a) {
  auto es = solve(a, true);
  const int d = a.dim();
  EigenDecomposition out;
  out.values.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.values[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  out.vectors = RectMatrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.vectors(i, j) = es.eigenvectors()(i, j);
  return out;
}

double spectral_norm(const SymMatrix& a) {
  auto es = solve(a, false);
  return std::max(std::fabs(es.eigenvalues()(0)), std::fabs(es.eigenvalues()(a.dim() - 1)));
}

double spectral_norm(const RectMatrix& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::fabs(a(0, 0));
  if (a.is_zero()) return 0.0;
  return spectral_norm(dilation(a));
}

double smallest_eigenvalue(const SymMatrix& a) {
  return solve(a, false).eigenvalues()(0);
}

double mixed_norm(const RectMatrix& a, MixedNormKind kind) {
  const int r = a.rows(), c = a.cols();
  const double* data = a.data().data();
  double best = 0.0;
  switch (kind) {
    case MixedNormKind::L1ToL2:
      for (int j = 0; j < c; ++j) {
        double s = 0.0;
        for (int i = 0; i < r; ++i) s += a(i, j) * a(i, j);
        best = std::max(best, s);
      }
      return std::sqrt(best);
    case MixedNormKind::L2ToLinf:
      for (int i = 0; i < r; ++i)
        best = std::max(best, kernels::sum_squares(data + static_cast<std::size_t>(i) * c,
                                                   static_cast<std::size_t>(c)));
      return std::sqrt(best);
    case MixedNormKind::L1ToLinf:
      return kernels::max_abs(data, a.data().size());
    case MixedNormKind::LinfToLinf:
      for (int i = 0; i < r; ++i) {
        double s = 0.0;
        for (int j = 0; j < c; ++j) s += std::fabs(a(i, j));
        best = std::max(best, s);
      }
      return best;
  }
  return best;
}

PsdCheck psd_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw InputError("psd_leq: dimension mismatch");
  if (tol < 0) throw InputError("psd_leq: tol must be >= 0");
  SymMatrix diff = b - a;
  auto es = solve(diff, true);
  PsdCheck out;
  out.min_eigenvalue = es.eigenvalues()(0);
  const double scale = std::max(std::fabs(es.eigenvalues()(0)), std::fabs(es.eigenvalues()(diff.dim() - 1)));
  out.holds = out.min_eigenvalue >= -tol * std::max(1.0, scale);
  if (!out.holds) {
    out.witness.resize(static_cast<std::size_t>(diff.dim()));
    for (int i = 0; i < diff.dim(); ++i) out.witness[static_cast<std::size_t>(i)] = es.eigenvectors()(i, 0);
  }
  return out;
}

SymMatrix psd_sqrt(const SymMatrix& a) {
  auto es = solve(a, true);
  const int d = a.dim();
  const double norm = std::max(std::fabs(es.eigenvalues()(0)), std::fabs(es.eigenvalues()(d - 1)));
  const double floor = -1e-9 * norm;
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < d; ++i) {
    if (vals(i) < floor) {
      std::ostringstream msg;
      msg << "psd_sqrt: input not PSD (eigenvalue " << vals(i) << " < " << floor << ")";
      throw InputError(msg.str());
    }
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  Eigen::MatrixXd m = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
  std::vector<double> out(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i) * d + j] = m(i, j);
  return SymMatrix(d, std::move(out));
}

double trace_exp(const SymMatrix& a) {
  auto es = solve(a, false);
  const double top = es.eigenvalues()(a.dim() - 1);
  if (top > 700.0) {
    std::ostringstream msg;
    msg << "trace_exp: max eigenvalue " << top << " exceeds exp range (~700)";
    throw RangeError(msg.str());
  }
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += std::exp(es.eigenvalues()(i));
  return t;
}

SymMatrix sym_exp(const SymMatrix& a) {
  return apply_spectral(a, [](double x) { return std::exp(x); });
}

SymMatrix dilation(const RectMatrix& b) {
  const int m = b.rows(), n = b.cols();
  SymMatrix d(m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) d.set(i, m + j, b(i, j));
  return d;
}

namespace {

LemmaCheck from_psd(const PsdCheck& c, const char* what) {
  LemmaCheck out;
  out.holds = c.holds;
  out.margin = c.min_eigenvalue;
  if (!c.holds) {
    out.detail = std::string(what) + ": PSD order violated";
    out.witness = c.witness;
  }
  return out;
}

LemmaCheck combine(const LemmaCheck& a, const LemmaCheck& b) {
  LemmaCheck out;
  out.holds = a.holds && b.holds;
  out.margin = std::min(a.margin, b.margin);
  const LemmaCheck& blame = !a.holds ? a : b;
  out.detail = blame.detail;
  out.witness = blame.witness;
  return out;
}

}  // namespace

LemmaCheck verify_matrix_lemma(MatrixLemma kind, const SymMatrix& a, const SymMatrix& b,
                               double tol) {
  if (a.dim() != b.dim()) throw InputError("verify_matrix_lemma: dimension mismatch");
  const SymMatrix a2 = sym_square(a);
  const SymMatrix b2 = sym_square(b);
  switch (kind) {
    case MatrixLemma::OpConvexity: {
      const SymMatrix cross = jordan_product_twice(a, b);
      const SymMatrix bound = a2 + b2;
      auto upper = from_psd(psd_leq(cross, bound, tol), "AB+BA <= A^2+B^2");
      auto lower = from_psd(psd_leq(-1.0 * bound, cross, tol), "-A^2-B^2 <= AB+BA");
      return combine(upper, lower);
    }
    case MatrixLemma::SumSquare: {
      return from_psd(psd_leq(sym_square(a + b), 2.0 * a2 + 2.0 * b2, tol),
                      "(A+B)^2 <= 2A^2+2B^2");
    }
    case MatrixLemma::ExpBound: {
      if (!psd_leq(a, SymMatrix::identity(a.dim()), kDefaultPsdTol).holds)
        throw InputError("exp_bound: hypothesis A <= id violated");
      if (!psd_leq(SymMatrix(b.dim()), b, kDefaultPsdTol).holds)
        throw InputError("exp_bound: hypothesis B >= 0 violated");
      SymMatrix rhs = SymMatrix::identity(a.dim()) + a - b + 2.0 * a2 + 2.0 * b2;
      return from_psd(psd_leq(sym_exp(a - b), rhs, tol), "exp(A-B) bound");
    }
    case MatrixLemma::GoldenThompson: {
      const double lhs = trace_exp(a + b);
      RectMatrix prod = sym_matmul(sym_exp(a), sym_exp(b));
      double rhs = 0.0;
      for (int i = 0; i < prod.rows(); ++i) rhs += prod(i, i);
      LemmaCheck out;
      const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      out.margin = (rhs - lhs) / scale;
      out.holds = lhs <= rhs + tol * scale;
      if (!out.holds) out.detail = "tr e^{A+B} > tr e^A e^B";
      return out;
    }
  }
  throw InputError("verify_matrix_lemma: unknown lemma kind");
}

}  // namespace negdep
