#pragma once

#include <vector>

#include "qst/dynamics.hpp"
#include "qst/matrix.hpp"

namespace qst {

enum class Method {
    RK4_FIXED,      // fixed-step classical Runge-Kutta, the workhorse
    PIECEWISE_EXPM  // midpoint-sampled piecewise matrix exponential, the oracle
};

struct IntegratorSettings {
    Method method = Method::RK4_FIXED;
    int steps = 0;          // <= 0: caller substitutes default_steps()
    int record_stride = 0;  // <= 0: only initial and final states are kept
};

// Step count such that h <= min(T/4096, 0.01/lambda0), additionally capped
// by 0.01/(n_pairs * delta_fsr) for a multimode fiber.
int default_steps(const PulseParams& p, const SystemConfig& c);

struct Trajectory {
    std::vector<double> times;
    std::vector<CVector> states;

    const CVector& final_state() const { return states.back(); }
};

// Propagate dV/dt = -i M(t) V over [0, duration]. Snapshots are recorded
// every record_stride steps plus the final state at exactly t = duration.
Trajectory propagate(const Generator& gen, const CVector& v0, double duration,
                     const IntegratorSettings& settings);

Trajectory rk4_propagate(const Generator& gen, const CVector& v0, double duration,
                         int steps, int record_stride);

// Piecewise-constant propagation: each step applies exp(-i h M(t_mid)) via
// scaling-and-squaring. Independent of the RK4 path; used for cross-checks.
Trajectory expm_propagate(const Generator& gen, const CVector& v0, double duration,
                          int steps, int record_stride);

}  // namespace qst
