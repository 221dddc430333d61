#include "hesskit/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace hesskit::kernels {

namespace detail {

double powi(double x, int p) {
    double acc = 1.0;
    double base = x;
    unsigned e = static_cast<unsigned>(p);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// One Newton step for y^p = x; assumes y is already close.
inline double polish_root(double y, double x, int p) {
    if (y <= 0.0 || !std::isfinite(y)) return y;
    const double yp = powi(y, p);
    return y * ((p - 1) + x / yp) / p;
}

} // namespace detail

namespace scalar {

void abs_pow(const double* x, double* out, std::size_t len, int p) {
    for (std::size_t i = 0; i < len; ++i) out[i] = detail::powi(std::fabs(x[i]), p);
}

void scaled_mul(const double* x, const double* y, double* out, std::size_t len, double c) {
    for (std::size_t i = 0; i < len; ++i) out[i] = c * x[i] * y[i];
}

void scaled_ratio(const double* num, const double* den, double* out, std::size_t len,
                  double c, int m) {
    if (m == 0) {
        for (std::size_t i = 0; i < len; ++i) out[i] = c * num[i];
        return;
    }
    for (std::size_t i = 0; i < len; ++i) out[i] = c * num[i] / detail::powi(den[i], m);
}

void kth_root(const double* x, double* out, std::size_t len, int p) {
    if (p == 1) {
        for (std::size_t i = 0; i < len; ++i) out[i] = x[i];
        return;
    }
    if (p == 2) {
        for (std::size_t i = 0; i < len; ++i) out[i] = std::sqrt(x[i]);
        return;
    }
    const double invp = 1.0 / p;
    for (std::size_t i = 0; i < len; ++i) {
        const double v = x[i];
        if (v == 0.0) {
            out[i] = 0.0;
            continue;
        }
        // pow's rounding of 1/p costs ~|log x|*2^-53 relative; one Newton
        // step brings the root back to ulp level.
        out[i] = detail::polish_root(std::pow(v, invp), v, p);
    }
}

double max_abs(const double* x, std::size_t len) {
    double m = 0.0;
    for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double max_abs_diff(const double* x, const double* y, std::size_t len) {
    double m = 0.0;
    for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HESSKIT_HAVE_AVX2_TU 1
namespace avx2 {
void abs_pow(const double* x, double* out, std::size_t len, int p);
void scaled_mul(const double* x, const double* y, double* out, std::size_t len, double c);
void scaled_ratio(const double* num, const double* den, double* out, std::size_t len,
                  double c, int m);
void kth_root(const double* x, double* out, std::size_t len, int p);
double max_abs(const double* x, std::size_t len);
double max_abs_diff(const double* x, const double* y, std::size_t len);
} // namespace avx2
#else
#define HESSKIT_HAVE_AVX2_TU 0
#endif

namespace {

struct KernelTable {
    void (*abs_pow)(const double*, double*, std::size_t, int);
    void (*scaled_mul)(const double*, const double*, double*, std::size_t, double);
    void (*scaled_ratio)(const double*, const double*, double*, std::size_t, double, int);
    void (*kth_root)(const double*, double*, std::size_t, int);
    double (*max_abs)(const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
};

constexpr KernelTable kScalarTable = {scalar::abs_pow,  scalar::scaled_mul, scalar::scaled_ratio,
                                      scalar::kth_root, scalar::max_abs,    scalar::max_abs_diff};

#if HESSKIT_HAVE_AVX2_TU
constexpr KernelTable kAvx2Table = {avx2::abs_pow,  avx2::scaled_mul, avx2::scaled_ratio,
                                    avx2::kth_root, avx2::max_abs,    avx2::max_abs_diff};
#endif

bool detect_avx2() {
#if HESSKIT_HAVE_AVX2_TU && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend g_backend = detect_avx2() ? Backend::Avx2 : Backend::Scalar;

const KernelTable& table() {
#if HESSKIT_HAVE_AVX2_TU
    return g_backend == Backend::Avx2 ? kAvx2Table : kScalarTable;
#else
    return kScalarTable;
#endif
}

} // namespace

Backend active_backend() { return g_backend; }

bool host_supports(Backend b) {
    return b == Backend::Scalar || (b == Backend::Avx2 && detect_avx2());
}

bool set_backend(Backend b) {
    if (!host_supports(b)) return false;
    g_backend = b;
    return true;
}

void reset_backend() { g_backend = detect_avx2() ? Backend::Avx2 : Backend::Scalar; }

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "?";
}

void abs_pow(const double* x, double* out, std::size_t len, int p) {
    table().abs_pow(x, out, len, p);
}

void scaled_mul(const double* x, const double* y, double* out, std::size_t len, double c) {
    table().scaled_mul(x, y, out, len, c);
}

void scaled_ratio(const double* num, const double* den, double* out, std::size_t len,
                  double c, int m) {
    table().scaled_ratio(num, den, out, len, c, m);
}

void kth_root(const double* x, double* out, std::size_t len, int p) {
    table().kth_root(x, out, len, p);
}

double max_abs(const double* x, std::size_t len) { return table().max_abs(x, len); }

double max_abs_diff(const double* x, const double* y, std::size_t len) {
    return table().max_abs_diff(x, y, len);
}

} // namespace hesskit::kernels
