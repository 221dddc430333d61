// AVX2/FMA variants of the array kernels.  This translation unit is the
// only one compiled with -mavx2 -mfma; it must not be entered unless
// CPUID reports both features (the dispatcher checks).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace hesskit::kernels::avx2 {

namespace {

const __m256d kSignMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
// 2^52 + 2^51: double <-> int64 round trips for |v| < 2^51.
const __m256d kMagic = _mm256_set1_pd(6755399441055744.0);

inline __m256d powi_pd(__m256d x, int p) {
    __m256d acc = _mm256_set1_pd(1.0);
    __m256d base = x;
    unsigned e = static_cast<unsigned>(p);
    while (e) {
        if (e & 1u) acc = _mm256_mul_pd(acc, base);
        base = _mm256_mul_pd(base, base);
        e >>= 1;
    }
    return acc;
}

inline __m256i double_to_i64(__m256d v) {
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(v, kMagic)),
                            _mm256_castpd_si256(kMagic));
}

inline __m256d i64_to_double(__m256i v) {
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, _mm256_castpd_si256(kMagic))),
                         kMagic);
}

// log2 for normal positive inputs.
inline __m256d log2_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    __m256i e = _mm256_sub_epi64(
        _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF)),
        _mm256_set1_epi64x(1023));
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                        _mm256_set1_epi64x(0x3FF0000000000000LL)));
    // bring the mantissa into [sqrt(1/2), sqrt(2))
    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d ge = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), ge);
    __m256d ed = i64_to_double(e);
    ed = _mm256_add_pd(ed, _mm256_and_pd(ge, _mm256_set1_pd(1.0)));

    // log2(m) = (2/ln2) * atanh(t), t = (m-1)/(m+1), |t| <= 0.1716
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d t =
        _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d t2 = _mm256_mul_pd(t, t);
    __m256d s = _mm256_set1_pd(1.0 / 15.0);
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 13.0));
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 11.0));
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 9.0));
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 7.0));
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 5.0));
    s = _mm256_fmadd_pd(s, t2, _mm256_set1_pd(1.0 / 3.0));
    s = _mm256_fmadd_pd(s, t2, one);
    const __m256d two_over_ln2 = _mm256_set1_pd(2.8853900817779268);
    return _mm256_fmadd_pd(_mm256_mul_pd(t, s), two_over_ln2, ed);
}

// 2^z for |z| < 1024-ish.
inline __m256d exp2_pd(__m256d z) {
    const __m256d zn = _mm256_round_pd(z, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d f = _mm256_sub_pd(z, zn);
    const __m256d w = _mm256_mul_pd(f, _mm256_set1_pd(0.6931471805599453));
    // exp(w), |w| <= ln2/2, Horner Taylor
    __m256d p = _mm256_set1_pd(1.0 / 13.0);
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 12.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 10.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 8.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 4.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_mul_pd(p, _mm256_set1_pd(1.0 / 2.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0));
    // scale by 2^zn through the exponent bits
    const __m256i shift = _mm256_slli_epi64(double_to_i64(zn), 52);
    return _mm256_castsi256_pd(_mm256_add_epi64(_mm256_castpd_si256(p), shift));
}

// x^(1/p) for x >= 0: exp2(log2(x)/p) seed plus two Newton steps.
inline __m256d kth_root_pd(__m256d x, int p, __m256d invp, __m256d pm1) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d isz = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
    __m256d y = exp2_pd(_mm256_mul_pd(log2_pd(x), invp));
    for (int it = 0; it < 2; ++it) {
        const __m256d q = _mm256_div_pd(x, powi_pd(y, p));
        y = _mm256_mul_pd(y, _mm256_mul_pd(_mm256_add_pd(pm1, q), invp));
    }
    return _mm256_andnot_pd(isz, y);
}

} // namespace

void abs_pow(const double* x, double* out, std::size_t len, int p) {
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_and_pd(_mm256_loadu_pd(x + i), kSignMask);
        _mm256_storeu_pd(out + i, powi_pd(v, p));
    }
    for (; i < len; ++i) {
        double acc = 1.0, base = std::fabs(x[i]);
        for (unsigned e = static_cast<unsigned>(p); e; e >>= 1, base *= base)
            if (e & 1u) acc *= base;
        out[i] = acc;
    }
}

void scaled_mul(const double* x, const double* y, double* out, std::size_t len, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(vc, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                                         _mm256_loadu_pd(y + i))));
    for (; i < len; ++i) out[i] = c * x[i] * y[i];
}

void scaled_ratio(const double* num, const double* den, double* out, std::size_t len,
                  double c, int m) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    if (m == 0) {
        for (; i + 4 <= len; i += 4)
            _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, _mm256_loadu_pd(num + i)));
        for (; i < len; ++i) out[i] = c * num[i];
        return;
    }
    for (; i + 4 <= len; i += 4) {
        const __m256d d = powi_pd(_mm256_loadu_pd(den + i), m);
        _mm256_storeu_pd(out + i,
                         _mm256_div_pd(_mm256_mul_pd(vc, _mm256_loadu_pd(num + i)), d));
    }
    for (; i < len; ++i) {
        double acc = 1.0, base = den[i];
        for (unsigned e = static_cast<unsigned>(m); e; e >>= 1, base *= base)
            if (e & 1u) acc *= base;
        out[i] = c * num[i] / acc;
    }
}

void kth_root(const double* x, double* out, std::size_t len, int p) {
    std::size_t i = 0;
    if (p == 1) {
        for (; i < len; ++i) out[i] = x[i];
        return;
    }
    if (p == 2) {
        for (; i + 4 <= len; i += 4)
            _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(x + i)));
        for (; i < len; ++i) out[i] = std::sqrt(x[i]);
        return;
    }
    const __m256d invp = _mm256_set1_pd(1.0 / p);
    const __m256d pm1 = _mm256_set1_pd(static_cast<double>(p - 1));
    for (; i + 4 <= len; i += 4)
        _mm256_storeu_pd(out + i, kth_root_pd(_mm256_loadu_pd(x + i), p, invp, pm1));
    for (; i < len; ++i) {
        const double v = x[i];
        if (v == 0.0) {
            out[i] = 0.0;
            continue;
        }
        double y = std::pow(v, 1.0 / p);
        double acc = 1.0, base = y;
        for (unsigned e = static_cast<unsigned>(p); e; e >>= 1, base *= base)
            if (e & 1u) acc *= base;
        out[i] = y * ((p - 1) + v / acc) / p;
    }
}

double max_abs(const double* x, std::size_t len) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4)
        vm = _mm256_max_pd(vm, _mm256_and_pd(_mm256_loadu_pd(x + i), kSignMask));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vm);
    double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < len; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double max_abs_diff(const double* x, const double* y, std::size_t len) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        vm = _mm256_max_pd(vm, _mm256_and_pd(d, kSignMask));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vm);
    double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < len; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

} // namespace hesskit::kernels::avx2

#endif // x86_64
