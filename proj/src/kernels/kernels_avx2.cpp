// AVX2 kernel variants. This translation unit is compiled with
// -mavx2 -mfma; it must only be entered after a runtime cpuid check
// (see kernels.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace negdep::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double max_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask));
  double r = hmax(acc);
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

double weighted_count_geq(const double* v, const double* w, double t,
                          std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(v + i), vt, _CMP_GE_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(w + i)));
  }
  double r = hsum(acc);
  for (; i < n; ++i)
    if (v[i] >= t) r += w[i];
  return r;
}

std::size_t count_geq(const double* v, double t, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(v + i), vt, _CMP_GE_OQ);
    c += static_cast<std::size_t>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(mask))));
  }
  for (; i < n; ++i)
    if (v[i] >= t) ++c;
  return c;
}

}  // namespace negdep::kernels::avx2

#endif  // x86-64
