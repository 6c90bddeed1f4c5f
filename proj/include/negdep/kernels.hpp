#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel kernels used by the enumeration and Monte Carlo inner loops.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vectorized variant selected at runtime. The two variants agree to
// rounding (summation order differs), and exactly for the counting kernels;
// tests/test_kernels.cpp enforces this.

namespace negdep::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Selects the backend for all subsequent kernel calls and returns the one
// actually in effect (Auto resolves to the widest supported instruction set;
// requesting Avx2 on a CPU without it falls back to Scalar). Not thread-safe
// against concurrent kernel calls; call it during setup.
Backend set_backend(Backend b);
Backend active_backend();
const char* backend_name(Backend b);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);

// Sum of w[i] over indices with v[i] >= t.
double weighted_count_geq(const double* v, const double* w, double t,
                          std::size_t n);

// Number of indices with v[i] >= t.
std::size_t count_geq(const double* v, double t, std::size_t n);

}  // namespace negdep::kernels
