#include <random>

#include "doctest.h"
#include "qst/kernels.hpp"
#include "qst/matrix.hpp"

using namespace qst;

namespace {

std::mt19937 rng(12345);

CVector random_vector(int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVector v(n);
    for (auto& z : v) z = cdouble(u(rng), u(rng));
    return v;
}

CMatrix random_matrix(int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = cdouble(u(rng), u(rng));
    return m;
}

double max_rel_err(const CVector& got, const CVector& want) {
    double scale = 0.0;
    for (const auto& z : want) scale = std::max(scale, std::abs(z));
    double err = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - want[i]));
    return err / std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("scalar matvec matches the plain reference product") {
    for (int n : {1, 2, 3, 5, 7, 21, 24}) {
        const CMatrix m = random_matrix(n);
        const CVector x = random_vector(n);
        CVector y(n);
        kernels::scalar_ops().matvec(m.data(), n, x.data(), y.data());
        CHECK(max_rel_err(y, multiply(m, x)) < 1e-14);
    }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!kernels::avx2_supported()) {
        MESSAGE("avx2 not available on this host, skipping equivalence checks");
        return;
    }
    const auto& sc = kernels::scalar_ops();
    const auto& vx = kernels::avx2_ops();
    for (int n : {1, 2, 3, 4, 5, 8, 11, 16, 21, 33}) {
        const CMatrix m = random_matrix(n);
        const CVector x = random_vector(n);
        CVector ys(n), yv(n);
        sc.matvec(m.data(), n, x.data(), ys.data());
        vx.matvec(m.data(), n, x.data(), yv.data());
        CHECK(max_rel_err(yv, ys) < 1e-13);

        const cdouble alpha(0.37, -1.21);
        CVector ks = random_vector(n);
        CVector outs(n), outv(n);
        sc.xpay(x.data(), alpha, ks.data(), outs.data(), n);
        vx.xpay(x.data(), alpha, ks.data(), outv.data(), n);
        CHECK(max_rel_err(outv, outs) < 1e-13);

        CVector ya = x, yb = x;
        sc.axpy(alpha, ks.data(), ya.data(), n);
        vx.axpy(alpha, ks.data(), yb.data(), n);
        CHECK(max_rel_err(yb, ya) < 1e-13);
    }
}

TEST_CASE("active kernel selection is well formed") {
    const auto& ops = kernels::active_ops();
    CHECK(ops.matvec != nullptr);
    CHECK(ops.xpay != nullptr);
    CHECK(ops.axpy != nullptr);
    const std::string name = ops.name;
    CHECK((name == "scalar" || name == "avx2"));
    if (!kernels::avx2_supported()) CHECK(name == "scalar");
}
