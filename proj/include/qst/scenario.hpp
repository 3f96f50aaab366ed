#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qst/config_file.hpp"
#include "qst/dynamics.hpp"

namespace qst {

enum class RunMode {
    Efficiency,           // single transfer, prints and writes eps
    Pulses,               // reference and reshaped pulse shapes vs time
    Trajectory,           // receiver population vs time, per protocol
    SweepDuration,        // eps vs T, per protocol
    SweepDurationModels,  // eps vs T for single/three/nineteen-mode and effective models
    Sweep2D,              // eps over (T, lambda0), per protocol
    SweepLength           // inefficiency vs fiber length plus closed form
};

RunMode run_mode_from_name(const std::string& name);
const char* run_mode_name(RunMode m);

// Resolved run description. Frequencies are plain Hz (value/2pi as quoted in
// configuration files); conversions to angular units happen at use sites.
struct ScenarioConfig {
    std::string name = "custom";
    RunMode mode = RunMode::Efficiency;
    Protocol protocol = Protocol::AP;
    std::vector<Protocol> protocols{Protocol::AP, Protocol::STAP_CD, Protocol::STAP_MOD};

    double lambda0_hz = 10e6;
    double duration_ns = 250.0;
    double duration_t0 = 0.0;  // if > 0 the duration is duration_t0 * T0
    double sigma_ratio = 0.125;
    std::vector<double> sigma_ratios;  // trajectory mode; defaults to {sigma_ratio}
    double gamma_fib_hz = 0.0;
    double gamma_m_hz = 0.0;
    std::optional<double> delta_fsr_hz;
    std::optional<double> fiber_length_m;
    int n_pairs = 0;
    int steps = 0;
    int threads = 0;
    std::string out_dir = ".";

    // duration axis, in units of T0
    double t_min_t0 = 0.5, t_max_t0 = 6.0;
    int t_count = 23;
    bool t_log = false;
    // duration axis for the 2-D map, absolute nanoseconds (T0 varies with
    // lambda0 across that grid)
    double t_min_ns = 25.0, t_max_ns = 800.0;
    // strength axis for the 2-D map
    double lambda0_min_hz = 1e6, lambda0_max_hz = 64e6;
    int lambda0_count = 32;
    bool lambda0_log = true;
    // fiber length axis
    double length_min_m = 10.0, length_max_m = 1000.0;
    int length_count = 9;
    bool emit_sigma_quarter = false;  // length sweep: extra file at sigma = T/4

    static ScenarioConfig defaults_for(const std::string& scenario);
    void apply(const KeyValueFile& kv);
    void check() const;  // throws ConfigError on inconsistencies

    double lambda0_rad() const;
    double duration_seconds() const;
    SystemConfig system_config() const;  // protocol/n_pairs/rates/delta resolved
};

// Load preset + optional overrides file. Throws ConfigError.
ScenarioConfig load_scenario(const std::string& scenario,
                             const std::optional<std::string>& config_path);

struct CliOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<int> steps;
    std::optional<int> threads;
};

// Executes a scenario end to end. Returns 0 on success, 2 on configuration
// errors, 3 on numerical failures; diagnostics go to stderr.
int run_scenario(const std::string& scenario, const CliOverrides& cli);

}  // namespace qst
