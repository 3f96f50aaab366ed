#pragma once

#include <complex>

namespace qst::kernels {

using cdouble = std::complex<double>;

// y = A x with A a row-major n x n complex matrix.
using MatVecFn = void (*)(const cdouble* a, int n, const cdouble* x, cdouble* y);
// y = x + alpha * k, elementwise over n entries.
using XPlusAYFn = void (*)(const cdouble* x, cdouble alpha, const cdouble* k, cdouble* y, int n);
// y += alpha * x over n entries.
using AxpyFn = void (*)(cdouble alpha, const cdouble* x, cdouble* y, int n);

struct Ops {
    const char* name;
    MatVecFn matvec;
    XPlusAYFn xpay;
    AxpyFn axpy;
};

// Portable reference implementation; the correctness baseline.
const Ops& scalar_ops();

// AVX2+FMA variant. Valid to call only when avx2_supported() is true;
// otherwise the struct forwards to the scalar kernels.
const Ops& avx2_ops();
bool avx2_supported();

// Runtime-selected kernel set. Honors QST_SIM_KERNEL={scalar,avx2};
// defaults to the best variant the CPU supports. Resolved once.
const Ops& active_ops();

}  // namespace qst::kernels
