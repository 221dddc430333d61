#pragma once

#include <cstddef>

// Elementwise array primitives used by the solver's inner loops.  Each
// kernel has a scalar reference implementation and an AVX2 variant; the
// active backend is picked at startup from CPUID and can be overridden
// (tests run both and compare).  All kernels are pure and thread-safe.

namespace hesskit::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
/// Returns false (and leaves the backend unchanged) if the requested
/// backend is not supported on this host.
bool set_backend(Backend b);
/// Back to the best backend the host supports.
void reset_backend();
const char* backend_name(Backend b);
bool host_supports(Backend b);

/// out[i] = |x[i]|^p, p >= 0 (p = 0 gives 1.0).
void abs_pow(const double* x, double* out, std::size_t len, int p);

/// out[i] = c * x[i] * y[i].
void scaled_mul(const double* x, const double* y, double* out, std::size_t len, double c);

/// out[i] = c * num[i] / den[i]^m, m >= 0.  den[i] != 0 when m > 0.
void scaled_ratio(const double* num, const double* den, double* out, std::size_t len,
                  double c, int m);

/// out[i] = x[i]^(1/p) for x[i] >= 0, p >= 1.  Accurate to a few ulp.
void kth_root(const double* x, double* out, std::size_t len, int p);

double max_abs(const double* x, std::size_t len);
double max_abs_diff(const double* x, const double* y, std::size_t len);

} // namespace hesskit::kernels
