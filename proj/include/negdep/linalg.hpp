#pragma once

#include <string>
#include <vector>

#include "negdep/matrix.hpp"

namespace negdep {

inline constexpr double kDefaultPsdTol = 1e-9;

// Largest |eigenvalue| (symmetric) / largest singular value (rectangular,
// computed through the dilation so a single symmetric eigensolver serves
// both cases).
double spectral_norm(const SymMatrix& a);
double spectral_norm(const RectMatrix& a);

double smallest_eigenvalue(const SymMatrix& a);

enum class MixedNormKind { L1ToL2, L2ToLinf, L1ToLinf, LinfToLinf };

// l1->l2: max column Euclidean norm; l2->linf: max row Euclidean norm;
// l1->linf: max |entry|; linf->linf: max absolute row sum.
double mixed_norm(const RectMatrix& a, MixedNormKind kind);

struct PsdCheck {
  bool holds = false;
  double min_eigenvalue = 0.0;
  std::vector<double> witness;  // unit v with v^T (B - A) v < 0, when !holds
};

// A <= B in the PSD order, up to -tol * max(1, ||B - A||).
PsdCheck psd_leq(const SymMatrix& a, const SymMatrix& b, double tol = kDefaultPsdTol);

// PSD square root. Eigenvalues in [-1e-9*||A||, 0) are clamped to zero;
// anything lower raises InputError.
SymMatrix psd_sqrt(const SymMatrix& a);

// tr exp(A) through the eigenvalues. RangeError if max eigenvalue > ~700.
double trace_exp(const SymMatrix& a);

// exp(A) through the eigenvalues.
SymMatrix sym_exp(const SymMatrix& a);

// [[0, B], [B^T, 0]]; spectral norm equals that of B.
SymMatrix dilation(const RectMatrix& b);

enum class MatrixLemma { OpConvexity, SumSquare, ExpBound, GoldenThompson };

struct LemmaCheck {
  bool holds = false;
  double margin = 0.0;  // smallest slack across the inequalities checked
  std::string detail;
  std::vector<double> witness;  // unit direction violating the PSD order, when !holds
};

// op_conv:          -A^2 - B^2 <= AB + BA <= A^2 + B^2
// sum_square:       (A + B)^2 <= 2A^2 + 2B^2
// exp_bound:        exp(A - B) <= id + A - B + 2A^2 + 2B^2   (A <= id, B >= 0)
// golden_thompson:  tr e^{A+B} <= tr e^A e^B
// exp_bound hypothesis violations raise InputError; a theorem failure is a
// false verdict, never an exception.
LemmaCheck verify_matrix_lemma(MatrixLemma kind, const SymMatrix& a, const SymMatrix& b,
                               double tol = 1e-8);

struct EigenDecomposition {
  std::vector<double> values;       // ascending
  RectMatrix vectors;               // column j is the eigenvector of values[j]
};
EigenDecomposition eigh(const SymMatrix& a);

}  // namespace negdep
