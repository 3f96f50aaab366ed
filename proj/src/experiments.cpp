#include "qst/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "qst/kernels.hpp"

namespace qst {

EfficiencyResult transfer_efficiency(const PulseParams& p, const SystemConfig& c,
                                     IntegratorSettings settings) {
    const Generator gen = make_generator(p, c);
    if (settings.steps <= 0) settings.steps = default_steps(p, c);
    if (settings.record_stride <= 0) settings.record_stride = settings.steps;

    CVector v0(gen.dim);
    v0[0] = 1.0;

    const auto t_start = std::chrono::steady_clock::now();
    Trajectory traj = propagate(gen, v0, p.duration, settings);
    const auto t_end = std::chrono::steady_clock::now();

    EfficiencyResult res;
    const CVector& vf = traj.final_state();
    res.final_populations.resize(gen.dim);
    double total = 0.0;
    for (int i = 0; i < gen.dim; ++i) {
        res.final_populations[i] = std::norm(vf[i]);
        total += res.final_populations[i];
    }
    res.epsilon = std::clamp(res.final_populations[gen.dim - 1], 0.0, 1.0);
    res.residual_fiber_population = 0.0;
    for (int i = 1; i < gen.dim - 1; ++i) res.residual_fiber_population += res.final_populations[i];
    res.dissipated_fraction = 1.0 - total;
    res.steps_used = settings.steps;
    res.wall_seconds = std::chrono::duration<double>(t_end - t_start).count();
    res.kernel = kernels::active_ops().name;
    res.trajectory = std::move(traj);
    return res;
}

namespace {

void warn_sigma_ratio(const PulseParams& p) {
    const double ratio = p.sigma / p.duration;
    static std::atomic<bool> warned{false};
    if (std::abs(ratio - 0.125) > 1e-9 && !warned.exchange(true)) {
        std::cerr << "warning: closed-form efficiency assumes sigma = T/8, got sigma/T = "
                  << ratio << "\n";
    }
}

double analytic_exponent(const PulseParams& p, const SystemConfig& c) {
    if (!(c.delta_fsr > 0.0))
        throw std::invalid_argument("analytic efficiency requires delta_fsr > 0");
    return c.gamma_fib * M_PI * M_PI / (p.lambda0 * p.lambda0 * p.duration) +
           c.gamma_fib * p.lambda0 * p.lambda0 * p.duration /
               (8.0 * c.delta_fsr * c.delta_fsr);
}

}  // namespace

double analytic_dark_mode_decay(const PulseParams& p, const SystemConfig& c) {
    validate(p);
    warn_sigma_ratio(p);
    return std::exp(-0.5 * analytic_exponent(p, c));
}

double analytic_efficiency(const PulseParams& p, const SystemConfig& c) {
    validate(p);
    warn_sigma_ratio(p);
    return std::exp(-analytic_exponent(p, c));
}

std::vector<double> Axis::values() const {
    if (count < 2) throw std::invalid_argument("axis '" + name + "': count must be >= 2");
    if (!(min < max)) throw std::invalid_argument("axis '" + name + "': bounds must be ordered");
    if (log_scale && !(min > 0.0))
        throw std::invalid_argument("axis '" + name + "': log scale requires positive bounds");
    std::vector<double> out(count);
    if (log_scale) {
        const double ratio = std::log(max / min) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = min * std::exp(i * ratio);
    } else {
        const double step = (max - min) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = min + i * step;
    }
    out.front() = min;
    out.back() = max;
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QST_SIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(resolve_threads(threads), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

DurationSweep sweep_duration(const Axis& t_axis, const SweepBase& base,
                             const std::vector<Protocol>& protocols) {
    DurationSweep out;
    out.durations = t_axis.values();
    out.protocols = protocols;
    out.eps.assign(protocols.size(), std::vector<double>(out.durations.size(), 0.0));

    const int jobs = static_cast<int>(protocols.size() * out.durations.size());
    parallel_for(jobs, base.threads, [&](int job) {
        const std::size_t k = job / out.durations.size();
        const std::size_t i = job % out.durations.size();
        const double T = out.durations[i];
        PulseParams p{base.lambda0, T, base.sigma_ratio * T};
        SystemConfig c = base.config;
        c.protocol = protocols[k];
        out.eps[k][i] = transfer_efficiency(p, c, base.settings).epsilon;
    });
    return out;
}

Grid2D sweep_2d(const Axis& t_axis, const Axis& lambda_axis, Protocol protocol,
                const SweepBase& base) {
    Grid2D out;
    out.durations = t_axis.values();
    out.strengths = lambda_axis.values();
    out.eps.assign(out.durations.size() * out.strengths.size(), 0.0);

    const int jobs = static_cast<int>(out.eps.size());
    parallel_for(jobs, base.threads, [&](int job) {
        const std::size_t i_t = job / out.strengths.size();
        const std::size_t i_l = job % out.strengths.size();
        const double T = out.durations[i_t];
        PulseParams p{out.strengths[i_l], T, base.sigma_ratio * T};
        SystemConfig c = base.config;
        c.protocol = protocol;
        out.eps[job] = transfer_efficiency(p, c, base.settings).epsilon;
    });
    return out;
}

LengthSweep sweep_fiber_length(const Axis& l_axis, const SweepBase& base, double t_in_t0) {
    LengthSweep out;
    out.lengths_m = l_axis.values();
    const std::size_t n = out.lengths_m.size();
    out.ineff_n1.assign(n, 0.0);
    out.ineff_n9.assign(n, 0.0);
    out.ineff_analytic.assign(n, 0.0);

    const PulseParams proto{base.lambda0, 1.0, base.sigma_ratio};
    const double T = t_in_t0 * characteristic_time(proto);
    const PulseParams p{base.lambda0, T, base.sigma_ratio * T};

    // Two simulated series per length; pair index 0 -> n_pairs = 1, 1 -> 9.
    parallel_for(static_cast<int>(2 * n), base.threads, [&](int job) {
        const std::size_t i = job / 2;
        const bool wide = (job % 2) != 0;
        SystemConfig c = base.config;
        c.protocol = Protocol::AP;
        c.delta_fsr = fsr_from_length(out.lengths_m[i]);
        c.n_pairs = wide ? 9 : 1;
        const double eps = transfer_efficiency(p, c, base.settings).epsilon;
        (wide ? out.ineff_n9[i] : out.ineff_n1[i]) = 1.0 - eps;
    });
    for (std::size_t i = 0; i < n; ++i) {
        SystemConfig c = base.config;
        c.delta_fsr = fsr_from_length(out.lengths_m[i]);
        out.ineff_analytic[i] = 1.0 - analytic_efficiency(p, c);
    }
    return out;
}

}  // namespace qst
