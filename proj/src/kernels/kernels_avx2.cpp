#include "qst/kernels.hpp"

// AVX2+FMA kernels operating on interleaved complex doubles, two complex
// values per 256-bit lane. This translation unit is the only one compiled
// with -mavx2 -mfma; selection happens at runtime in kernels.cpp.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qst::kernels {

namespace {

// Complex product of the lane pairs held in a and x:
//   re = ar*xr - ai*xi, im = ar*xi + ai*xr
inline __m256d cmul(__m256d a, __m256d x) {
    const __m256d xr = _mm256_movedup_pd(x);        // [xr0 xr0 xr1 xr1]
    const __m256d xi = _mm256_permute_pd(x, 0xF);   // [xi0 xi0 xi1 xi1]
    const __m256d asw = _mm256_permute_pd(a, 0x5);  // [ai0 ar0 ai1 ar1]
    return _mm256_fmaddsub_pd(xr, a, _mm256_mul_pd(xi, asw));
}

void matvec_avx2(const cdouble* a, int n, const cdouble* x, cdouble* y) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* xd = reinterpret_cast<const double*>(x);
    const int vec_end = n & ~1;  // complex pairs
    for (int r = 0; r < n; ++r) {
        const double* row = ad + 2 * static_cast<std::size_t>(r) * n;
        __m256d acc = _mm256_setzero_pd();
        for (int c = 0; c < vec_end; c += 2) {
            const __m256d av = _mm256_loadu_pd(row + 2 * c);
            const __m256d xv = _mm256_loadu_pd(xd + 2 * c);
            acc = _mm256_add_pd(acc, cmul(av, xv));
        }
        __m128d lo = _mm256_castpd256_pd128(acc);
        __m128d hi = _mm256_extractf128_pd(acc, 1);
        __m128d s = _mm_add_pd(lo, hi);
        double acc_re = _mm_cvtsd_f64(s);
        double acc_im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
        if (vec_end != n) {
            const int c = vec_end;
            const double ar = row[2 * c], ai = row[2 * c + 1];
            const double xr = xd[2 * c], xi = xd[2 * c + 1];
            acc_re += ar * xr - ai * xi;
            acc_im += ar * xi + ai * xr;
        }
        y[r] = cdouble(acc_re, acc_im);
    }
}

void xpay_avx2(const cdouble* x, cdouble alpha, const cdouble* k, cdouble* y, int n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* kd = reinterpret_cast<const double*>(k);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const int vec_end = n & ~1;
    for (int i = 0; i < vec_end; i += 2) {
        const __m256d kv = _mm256_loadu_pd(kd + 2 * i);
        const __m256d ksw = _mm256_permute_pd(kv, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(ar, kv, _mm256_mul_pd(ai, ksw));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(xd + 2 * i), prod));
    }
    if (vec_end != n) {
        const int i = vec_end;
        const double kr = kd[2 * i], ki = kd[2 * i + 1];
        yd[2 * i] = xd[2 * i] + alpha.real() * kr - alpha.imag() * ki;
        yd[2 * i + 1] = xd[2 * i + 1] + alpha.real() * ki + alpha.imag() * kr;
    }
}

void axpy_avx2(cdouble alpha, const cdouble* x, cdouble* y, int n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const int vec_end = n & ~1;
    for (int i = 0; i < vec_end; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d xsw = _mm256_permute_pd(xv, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xsw));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
    }
    if (vec_end != n) {
        const int i = vec_end;
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += alpha.real() * xr - alpha.imag() * xi;
        yd[2 * i + 1] += alpha.real() * xi + alpha.imag() * xr;
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{"avx2", &matvec_avx2, &xpay_avx2, &axpy_avx2};
    return ops;
}

bool avx2_compiled() { return true; }

}  // namespace qst::kernels

#else  // no AVX2 at compile time: forward to the scalar kernels

namespace qst::kernels {

const Ops& avx2_ops() { return scalar_ops(); }
bool avx2_compiled() { return false; }

}  // namespace qst::kernels

#endif
