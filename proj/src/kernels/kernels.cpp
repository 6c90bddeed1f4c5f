#include "negdep/kernels.hpp"

#include <cmath>

namespace negdep::kernels {

namespace scalar {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double weighted_count_geq(const double* v, const double* w, double t,
                          std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] >= t) acc += w[i];
  return acc;
}

std::size_t count_geq(const double* v, double t, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] >= t) ++c;
  return c;
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define NEGDEP_X86_64 1
namespace avx2 {
// Defined in kernels_avx2.cpp, compiled with -mavx2 -mfma.
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double weighted_count_geq(const double* v, const double* w, double t,
                          std::size_t n);
std::size_t count_geq(const double* v, double t, std::size_t n);
}  // namespace avx2
#endif

namespace {

struct Dispatch {
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*weighted_count_geq)(const double*, const double*, double,
                               std::size_t);
  std::size_t (*count_geq)(const double*, double, std::size_t);
};

constexpr Dispatch kScalar = {scalar::axpy,    scalar::dot,
                              scalar::sum,     scalar::sum_squares,
                              scalar::max_abs, scalar::weighted_count_geq,
                              scalar::count_geq};

#ifdef NEGDEP_X86_64
constexpr Dispatch kAvx2 = {avx2::axpy,    avx2::dot,
                            avx2::sum,     avx2::sum_squares,
                            avx2::max_abs, avx2::weighted_count_geq,
                            avx2::count_geq};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#else
bool cpu_has_avx2() { return false; }
#endif

Backend g_backend = Backend::Scalar;
const Dispatch* g_dispatch = &kScalar;
bool g_initialized = false;

void apply(Backend b) {
  g_backend = Backend::Scalar;
  g_dispatch = &kScalar;
#ifdef NEGDEP_X86_64
  if (b != Backend::Scalar && cpu_has_avx2()) {
    g_backend = Backend::Avx2;
    g_dispatch = &kAvx2;
  }
#else
  (void)b;
#endif
  g_initialized = true;
}

const Dispatch& dispatch() {
  if (!g_initialized) apply(Backend::Auto);
  return *g_dispatch;
}

}  // namespace

Backend set_backend(Backend b) {
  apply(b);
  return g_backend;
}

Backend active_backend() {
  dispatch();
  return g_backend;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    default:
      return "auto";
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().axpy(a, x, y, n);
}
double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().dot(x, y, n);
}
double sum(const double* x, std::size_t n) { return dispatch().sum(x, n); }
double sum_squares(const double* x, std::size_t n) {
  return dispatch().sum_squares(x, n);
}
double max_abs(const double* x, std::size_t n) {
  return dispatch().max_abs(x, n);
}
double weighted_count_geq(const double* v, const double* w, double t,
                          std::size_t n) {
  return dispatch().weighted_count_geq(v, w, t, n);
}
std::size_t count_geq(const double* v, double t, std::size_t n) {
  return dispatch().count_geq(v, t, n);
}

}  // namespace negdep::kernels
