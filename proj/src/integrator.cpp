#include "qst/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qst/kernels.hpp"

namespace qst {

namespace {

bool record_at(int k, int stride, int steps) {
    return (k % stride == 0 && k + stride <= steps) || k == steps;
}

int snapshot_count(int steps, int stride) { return steps / stride + 1; }

void check_finite(const CVector& v, double t) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error("propagation produced non-finite amplitudes near t = " +
                                     std::to_string(t) + " (step size too large?)");
    }
}

void validate_inputs(const Generator& gen, const CVector& v0, double duration, int steps) {
    if (static_cast<int>(v0.size()) != gen.dim)
        throw std::invalid_argument("propagate: initial vector dimension does not match generator");
    if (!(duration > 0.0)) throw std::invalid_argument("propagate: duration must be > 0");
    if (steps < 16) throw std::invalid_argument("propagate: need at least 16 steps");
    check_finite(v0, 0.0);
}

}  // namespace

int default_steps(const PulseParams& p, const SystemConfig& c) {
    double h_max = std::min(p.duration / 4096.0, 0.01 / p.lambda0);
    if (c.n_pairs > 0) {
        h_max = std::min(h_max, 0.01 / (c.n_pairs * c.delta_fsr));
        // when all fiber modes sit inside the pulse bandwidth the spectral
        // radius grows with the collective coupling, not the detunings
        const double collective = p.lambda0 * std::sqrt(2.0 * c.n_pairs + 1.0);
        h_max = std::min(h_max, 0.01 / collective);
    }
    const int steps = static_cast<int>(std::ceil(p.duration / h_max));
    return std::max(steps, 16);
}

Trajectory rk4_propagate(const Generator& gen, const CVector& v0, double duration, int steps,
                         int record_stride) {
    validate_inputs(gen, v0, duration, steps);
    if (record_stride <= 0) record_stride = steps;

    const auto& ops = kernels::active_ops();
    const int n = gen.dim;
    const double h = duration / steps;

    CMatrix m_a(n), m_mid(n), m_b(n);
    CVector v = v0;
    CVector k1(n), k2(n), k3(n), k4(n), w(n);

    Trajectory traj;
    traj.times.reserve(snapshot_count(steps, record_stride));
    traj.states.reserve(snapshot_count(steps, record_stride));
    if (record_at(0, record_stride, steps)) {
        traj.times.push_back(0.0);
        traj.states.push_back(v);
    }

    gen.build(0.0, m_a);
    for (int step = 0; step < steps; ++step) {
        const double t = step * h;
        gen.build(t + 0.5 * h, m_mid);
        gen.build(t + h, m_b);

        ops.matvec(m_a.data(), n, v.data(), k1.data());
        ops.xpay(v.data(), cdouble(0.0, -0.5 * h), k1.data(), w.data(), n);
        ops.matvec(m_mid.data(), n, w.data(), k2.data());
        ops.xpay(v.data(), cdouble(0.0, -0.5 * h), k2.data(), w.data(), n);
        ops.matvec(m_mid.data(), n, w.data(), k3.data());
        ops.xpay(v.data(), cdouble(0.0, -h), k3.data(), w.data(), n);
        ops.matvec(m_b.data(), n, w.data(), k4.data());

        ops.axpy(cdouble(0.0, -h / 6.0), k1.data(), v.data(), n);
        ops.axpy(cdouble(0.0, -h / 3.0), k2.data(), v.data(), n);
        ops.axpy(cdouble(0.0, -h / 3.0), k3.data(), v.data(), n);
        ops.axpy(cdouble(0.0, -h / 6.0), k4.data(), v.data(), n);

        std::swap(m_a, m_b);
        const int k = step + 1;
        if (record_at(k, record_stride, steps)) {
            const double tk = (k == steps) ? duration : k * h;
            check_finite(v, tk);
            traj.times.push_back(tk);
            traj.states.push_back(v);
        }
    }
    return traj;
}

Trajectory expm_propagate(const Generator& gen, const CVector& v0, double duration, int steps,
                          int record_stride) {
    validate_inputs(gen, v0, duration, steps);
    if (record_stride <= 0) record_stride = steps;

    using RowMajorXcd =
        Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const int n = gen.dim;
    const double h = duration / steps;

    CMatrix m(n);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = v0[i];

    Trajectory traj;
    auto record = [&](double t) {
        CVector snap(n);
        for (int i = 0; i < n; ++i) snap[i] = v(i);
        check_finite(snap, t);
        traj.times.push_back(t);
        traj.states.push_back(std::move(snap));
    };
    if (record_at(0, record_stride, steps)) record(0.0);

    RowMajorXcd a(n, n);
    for (int step = 0; step < steps; ++step) {
        const double t = step * h;
        gen.build(t + 0.5 * h, m);
        a = Eigen::Map<const RowMajorXcd>(m.data(), n, n) * cdouble(0.0, -h);
        v = a.exp() * v;
        const int k = step + 1;
        if (record_at(k, record_stride, steps)) record(k == steps ? duration : k * h);
    }
    return traj;
}

Trajectory propagate(const Generator& gen, const CVector& v0, double duration,
                     const IntegratorSettings& settings) {
    if (settings.method == Method::PIECEWISE_EXPM)
        return expm_propagate(gen, v0, duration, settings.steps, settings.record_stride);
    return rk4_propagate(gen, v0, duration, settings.steps, settings.record_stride);
}

}  // namespace qst
