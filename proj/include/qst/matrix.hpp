#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace qst {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Dense square complex matrix, row major storage.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

    int dim() const { return dim_; }

    cdouble& operator()(int r, int c) {
        assert(r >= 0 && r < dim_ && c >= 0 && c < dim_);
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }
    const cdouble& operator()(int r, int c) const {
        assert(r >= 0 && r < dim_ && c >= 0 && c < dim_);
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }

    cdouble* data() { return a_.data(); }
    const cdouble* data() const { return a_.data(); }

    void set_zero() { std::fill(a_.begin(), a_.end(), cdouble{}); }

private:
    int dim_ = 0;
    std::vector<cdouble> a_;
};

inline double norm_sq(const CVector& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

inline double norm(const CVector& v) { return std::sqrt(norm_sq(v)); }

// <a|b> with the left argument conjugated.
inline cdouble inner(const CVector& a, const CVector& b) {
    assert(a.size() == b.size());
    cdouble s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Plain reference product, independent of the kernel layer.
inline CVector multiply(const CMatrix& m, const CVector& v) {
    assert(static_cast<int>(v.size()) == m.dim());
    const int n = m.dim();
    CVector out(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        cdouble acc{};
        for (int c = 0; c < n; ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    assert(a.dim() == b.dim());
    const int n = a.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cdouble arc = a(r, k);
            if (arc == cdouble{}) continue;
            for (int c = 0; c < n; ++c) out(r, c) += arc * b(k, c);
        }
    return out;
}

inline CMatrix transpose(const CMatrix& m) {
    const int n = m.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(c, r) = m(r, c);
    return out;
}

inline CMatrix adjoint(const CMatrix& m) {
    const int n = m.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline CMatrix scaled(const CMatrix& m, cdouble factor) {
    const int n = m.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = factor * m(r, c);
    return out;
}

inline CMatrix sum(const CMatrix& a, const CMatrix& b) {
    assert(a.dim() == b.dim());
    const int n = a.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    assert(a.dim() == b.dim());
    double d = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
    return d;
}

}  // namespace qst
