#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qst/dynamics.hpp"
#include "qst/integrator.hpp"

namespace qst {

struct EfficiencyResult {
    double epsilon = 0.0;                     // |m2(T)|^2 for unit amplitude in m1
    std::vector<double> final_populations;    // per-mode |amplitude|^2 at t = T
    double residual_fiber_population = 0.0;   // sum over fiber modes
    double dissipated_fraction = 0.0;         // 1 - total final population
    int steps_used = 0;
    double wall_seconds = 0.0;
    std::string kernel;
    Trajectory trajectory;
};

EfficiencyResult transfer_efficiency(const PulseParams& p, const SystemConfig& c,
                                     IntegratorSettings settings = {});

// Closed-form adiabatic-limit amplitude survival of the dark mode,
//   exp(-gamma_fib pi^2 / (2 lambda0^2 T) - gamma_fib lambda0^2 T / (16 delta^2)).
// Valid for sigma = T/8; warns on stderr otherwise.
double analytic_dark_mode_decay(const PulseParams& p, const SystemConfig& c);

// Closed-form adiabatic-limit efficiency; the square of the decay above.
double analytic_efficiency(const PulseParams& p, const SystemConfig& c);

// ---- sweeps --------------------------------------------------------------

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_scale = false;

    std::vector<double> values() const;  // validates count >= 2 and ordering
};

// Shared fixed parameters for a sweep. sigma scales with each duration as
// sigma = sigma_ratio * T.
struct SweepBase {
    double lambda0 = 0.0;  // rad/s
    double sigma_ratio = 0.125;
    SystemConfig config;
    IntegratorSettings settings;
    int threads = 0;  // 0: QST_SIM_THREADS env or hardware concurrency
};

struct DurationSweep {
    std::vector<double> durations;             // seconds
    std::vector<Protocol> protocols;
    std::vector<std::vector<double>> eps;      // eps[protocol][duration index]
};

DurationSweep sweep_duration(const Axis& t_axis, const SweepBase& base,
                             const std::vector<Protocol>& protocols);

struct Grid2D {
    std::vector<double> durations;   // seconds
    std::vector<double> strengths;   // lambda0, rad/s
    std::vector<double> eps;         // eps[i_t * strengths.size() + i_l]

    double at(std::size_t i_t, std::size_t i_l) const { return eps[i_t * strengths.size() + i_l]; }
};

Grid2D sweep_2d(const Axis& t_axis, const Axis& lambda_axis, Protocol protocol,
                const SweepBase& base);

struct LengthSweep {
    std::vector<double> lengths_m;
    std::vector<double> ineff_n1;        // 1 - eps, three-mode fiber
    std::vector<double> ineff_n9;        // 1 - eps, nineteen-mode fiber
    std::vector<double> ineff_analytic;  // 1 - closed-form efficiency
};

// Duration is fixed at t_in_t0 characteristic times per point; delta_fsr
// follows from the fiber length while gamma_fib stays fixed.
LengthSweep sweep_fiber_length(const Axis& l_axis, const SweepBase& base, double t_in_t0 = 20.0);

// Deterministic helper: fn(i) for i in [0, count) distributed over worker
// threads; results must be written to disjoint slots by index.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

int resolve_threads(int requested);

}  // namespace qst
