#include "qst/kernels.hpp"

// Scalar reference kernels. Accumulation is done on split real/imaginary
// parts so the vectorized variants can match the same operation order
// closely; equivalence between the two paths is asserted in the tests.

namespace qst::kernels {

namespace {

void matvec_scalar(const cdouble* a, int n, const cdouble* x, cdouble* y) {
    for (int r = 0; r < n; ++r) {
        const cdouble* row = a + static_cast<std::size_t>(r) * n;
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (int c = 0; c < n; ++c) {
            const double ar = row[c].real();
            const double ai = row[c].imag();
            const double xr = x[c].real();
            const double xi = x[c].imag();
            acc_re += ar * xr - ai * xi;
            acc_im += ar * xi + ai * xr;
        }
        y[r] = cdouble(acc_re, acc_im);
    }
}

void xpay_scalar(const cdouble* x, cdouble alpha, const cdouble* k, cdouble* y, int n) {
    const double are = alpha.real();
    const double aim = alpha.imag();
    for (int i = 0; i < n; ++i) {
        const double kr = k[i].real();
        const double ki = k[i].imag();
        y[i] = cdouble(x[i].real() + are * kr - aim * ki,
                       x[i].imag() + are * ki + aim * kr);
    }
}

void axpy_scalar(cdouble alpha, const cdouble* x, cdouble* y, int n) {
    const double are = alpha.real();
    const double aim = alpha.imag();
    for (int i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = cdouble(y[i].real() + are * xr - aim * xi,
                       y[i].imag() + are * xi + aim * xr);
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", &matvec_scalar, &xpay_scalar, &axpy_scalar};
    return ops;
}

}  // namespace qst::kernels
