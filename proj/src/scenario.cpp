#include "qst/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qst/experiments.hpp"
#include "qst/table.hpp"

namespace qst {

namespace fs = std::filesystem;

RunMode run_mode_from_name(const std::string& name) {
    if (name == "efficiency") return RunMode::Efficiency;
    if (name == "pulses") return RunMode::Pulses;
    if (name == "trajectory") return RunMode::Trajectory;
    if (name == "sweep_duration") return RunMode::SweepDuration;
    if (name == "sweep_duration_models") return RunMode::SweepDurationModels;
    if (name == "sweep_2d") return RunMode::Sweep2D;
    if (name == "sweep_length") return RunMode::SweepLength;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::Efficiency: return "efficiency";
        case RunMode::Pulses: return "pulses";
        case RunMode::Trajectory: return "trajectory";
        case RunMode::SweepDuration: return "sweep_duration";
        case RunMode::SweepDurationModels: return "sweep_duration_models";
        case RunMode::Sweep2D: return "sweep_2d";
        case RunMode::SweepLength: return "sweep_length";
    }
    return "?";
}

ScenarioConfig ScenarioConfig::defaults_for(const std::string& scenario) {
    ScenarioConfig c;
    c.name = scenario;
    if (scenario == "custom") return c;
    if (scenario == "fig2") {
        c.mode = RunMode::Pulses;
        return c;
    }
    if (scenario == "fig3") {
        c.mode = RunMode::Trajectory;
        c.gamma_fib_hz = 22e3;
        c.sigma_ratios = {1.0 / 6.0, 0.125};
        return c;
    }
    if (scenario == "fig4") {
        c.mode = RunMode::SweepDuration;
        c.gamma_fib_hz = 22e3;
        c.t_min_t0 = 0.5;
        c.t_max_t0 = 6.0;
        c.t_count = 23;
        return c;
    }
    if (scenario == "fig5") {
        c.mode = RunMode::Sweep2D;
        c.gamma_fib_hz = 22e3;
        c.protocols = {Protocol::AP, Protocol::STAP_CD};
        c.t_count = 32;
        return c;
    }
    if (scenario == "fig6") {
        c.mode = RunMode::SweepDurationModels;
        c.gamma_fib_hz = 22e3;
        c.delta_fsr_hz = 10e6;
        c.t_min_t0 = 1.0;
        c.t_max_t0 = 20.0;
        c.t_count = 20;
        return c;
    }
    if (scenario == "fig7") {
        c.mode = RunMode::SweepLength;
        c.lambda0_hz = 1e6;
        c.gamma_fib_hz = 1.5e3;
        c.duration_t0 = 20.0;
        c.emit_sigma_quarter = true;
        return c;
    }
    throw ConfigError("scenario", 0,
                      "unknown scenario '" + scenario + "' (expected fig2..fig7 or custom)");
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

bool parse_bool(const std::string& key, const KeyValueFile::Entry& e) {
    if (e.value == "1" || e.value == "true" || e.value == "yes") return true;
    if (e.value == "0" || e.value == "false" || e.value == "no") return false;
    throw ConfigError(key, e.line, "value of '" + key + "' is not a boolean: " + e.value);
}

bool parse_log_scale(const std::string& key, const KeyValueFile::Entry& e) {
    if (e.value == "log") return true;
    if (e.value == "linear") return false;
    throw ConfigError(key, e.line, "value of '" + key + "' must be 'linear' or 'log'");
}

}  // namespace

void ScenarioConfig::apply(const KeyValueFile& kv) {
    for (const auto& [key, entry] : kv.entries) {
        try {
            if (key == "mode") mode = run_mode_from_name(entry.value);
            else if (key == "protocol") protocol = protocol_from_name(entry.value);
            else if (key == "protocols") {
                protocols.clear();
                for (const auto& item : split_list(entry.value))
                    protocols.push_back(protocol_from_name(item));
                if (protocols.empty()) throw std::invalid_argument("empty protocol list");
            } else if (key == "lambda0_hz") lambda0_hz = kv.get_double(key);
            else if (key == "duration_ns") duration_ns = kv.get_double(key);
            else if (key == "duration_t0") duration_t0 = kv.get_double(key);
            else if (key == "sigma_ratio") sigma_ratio = kv.get_double(key);
            else if (key == "sigma_ratios") {
                sigma_ratios.clear();
                for (const auto& item : split_list(entry.value)) sigma_ratios.push_back(std::stod(item));
            } else if (key == "gamma_fib_hz") gamma_fib_hz = kv.get_double(key);
            else if (key == "gamma_m_hz") gamma_m_hz = kv.get_double(key);
            else if (key == "delta_fsr_hz") delta_fsr_hz = kv.get_double(key);
            else if (key == "fiber_length_m") fiber_length_m = kv.get_double(key);
            else if (key == "n_pairs") n_pairs = kv.get_int(key);
            else if (key == "steps") steps = kv.get_int(key);
            else if (key == "threads") threads = kv.get_int(key);
            else if (key == "out_dir") out_dir = entry.value;
            else if (key == "t_min_t0") t_min_t0 = kv.get_double(key);
            else if (key == "t_max_t0") t_max_t0 = kv.get_double(key);
            else if (key == "t_count") t_count = kv.get_int(key);
            else if (key == "t_scale") t_log = parse_log_scale(key, entry);
            else if (key == "t_min_ns") t_min_ns = kv.get_double(key);
            else if (key == "t_max_ns") t_max_ns = kv.get_double(key);
            else if (key == "lambda0_min_hz") lambda0_min_hz = kv.get_double(key);
            else if (key == "lambda0_max_hz") lambda0_max_hz = kv.get_double(key);
            else if (key == "lambda0_count") lambda0_count = kv.get_int(key);
            else if (key == "lambda0_scale") lambda0_log = parse_log_scale(key, entry);
            else if (key == "length_min_m") length_min_m = kv.get_double(key);
            else if (key == "length_max_m") length_max_m = kv.get_double(key);
            else if (key == "length_count") length_count = kv.get_int(key);
            else if (key == "emit_sigma_quarter") emit_sigma_quarter = parse_bool(key, entry);
            else throw ConfigError(key, entry.line, "unknown configuration key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError(key, entry.line, std::string(ex.what()));
        }
    }
}

void ScenarioConfig::check() const {
    if (delta_fsr_hz && fiber_length_m)
        throw ConfigError("delta_fsr_hz, fiber_length_m", 0,
                          "keys 'delta_fsr_hz' and 'fiber_length_m' are mutually exclusive");
    if (!(lambda0_hz > 0.0)) throw ConfigError("lambda0_hz", 0, "lambda0_hz must be > 0");
    if (!(duration_ns > 0.0) && !(duration_t0 > 0.0))
        throw ConfigError("duration_ns", 0, "duration must be positive");
    if (!(sigma_ratio > 0.0) || sigma_ratio > 1.0)
        throw ConfigError("sigma_ratio", 0, "sigma_ratio must be in (0, 1]");
    for (double r : sigma_ratios)
        if (!(r > 0.0) || r > 1.0)
            throw ConfigError("sigma_ratios", 0, "sigma ratios must be in (0, 1]");
    if (gamma_fib_hz < 0.0 || gamma_m_hz < 0.0)
        throw ConfigError("gamma_fib_hz", 0, "damping rates must be >= 0");
    if (delta_fsr_hz && !(*delta_fsr_hz > 0.0))
        throw ConfigError("delta_fsr_hz", 0, "delta_fsr_hz must be > 0");
    if (fiber_length_m && !(*fiber_length_m > 0.0))
        throw ConfigError("fiber_length_m", 0, "fiber_length_m must be > 0");
    if (n_pairs < 0) throw ConfigError("n_pairs", 0, "n_pairs must be >= 0");
    const bool needs_delta = mode == RunMode::SweepDurationModels ||
                             protocol == Protocol::EFFECTIVE_3MODE || n_pairs > 0;
    if (needs_delta && !delta_fsr_hz && !fiber_length_m && mode != RunMode::SweepLength)
        throw ConfigError("delta_fsr_hz", 0,
                          "this run requires either 'delta_fsr_hz' or 'fiber_length_m'");
}

double ScenarioConfig::lambda0_rad() const { return 2.0 * M_PI * lambda0_hz; }

double ScenarioConfig::duration_seconds() const {
    if (duration_t0 > 0.0) {
        const PulseParams proto{lambda0_rad(), 1.0, 0.5};
        return duration_t0 * characteristic_time(proto);
    }
    return duration_ns * 1e-9;
}

SystemConfig ScenarioConfig::system_config() const {
    SystemConfig c;
    c.gamma_fib = 2.0 * M_PI * gamma_fib_hz;
    c.gamma_m = 2.0 * M_PI * gamma_m_hz;
    if (delta_fsr_hz) c.delta_fsr = 2.0 * M_PI * *delta_fsr_hz;
    else if (fiber_length_m) c.delta_fsr = fsr_from_length(*fiber_length_m);
    c.n_pairs = n_pairs;
    c.protocol = protocol;
    return c;
}

ScenarioConfig load_scenario(const std::string& scenario,
                             const std::optional<std::string>& config_path) {
    ScenarioConfig cfg = ScenarioConfig::defaults_for(scenario);
    if (config_path) cfg.apply(KeyValueFile::parse_file(*config_path));
    cfg.check();
    return cfg;
}

namespace {

constexpr double kTwoPiMHz = 2.0 * M_PI * 1e6;

std::vector<std::string> provenance(const ScenarioConfig& c) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
    add("scenario", c.name);
    add("mode", run_mode_name(c.mode));
    add("protocol", protocol_name(c.protocol));
    std::string plist;
    for (std::size_t i = 0; i < c.protocols.size(); ++i)
        plist += std::string(i ? "," : "") + protocol_name(c.protocols[i]);
    add("protocols", plist);
    add("lambda0_hz", format_value(c.lambda0_hz));
    add("duration_s", format_value(c.duration_seconds()));
    add("sigma_ratio", format_value(c.sigma_ratio));
    add("gamma_fib_hz", format_value(c.gamma_fib_hz));
    add("gamma_m_hz", format_value(c.gamma_m_hz));
    if (c.delta_fsr_hz) add("delta_fsr_hz", format_value(*c.delta_fsr_hz));
    if (c.fiber_length_m) add("fiber_length_m", format_value(*c.fiber_length_m));
    add("n_pairs", format_value(c.n_pairs));
    add("steps", c.steps > 0 ? format_value(c.steps) : "auto");
    return out;
}

std::string csv_path(const ScenarioConfig& c, const std::string& stem) {
    return (fs::path(c.out_dir) / (stem + ".csv")).string();
}

void announce_table(const ScenarioConfig& c, const std::string& path, const Table& t) {
    std::cout << c.name << ": wrote " << path << " (" << t.rows.size() << " rows x "
              << t.columns.size() << " cols)\n";
}

int resolved_steps(const ScenarioConfig& cfg, const PulseParams& p, const SystemConfig& sc) {
    return cfg.steps > 0 ? cfg.steps : default_steps(p, sc);
}

void run_pulses(const ScenarioConfig& cfg) {
    const double T = cfg.duration_seconds();
    const PulseParams p{cfg.lambda0_rad(), T, cfg.sigma_ratio * T};
    validate(p);
    Table t;
    t.comments = provenance(cfg);
    t.columns = {"t_ns", "g1_mhz", "g2_mhz", "g0_mhz", "g1_mod_mhz", "g2_mod_mhz", "g_a_mhz"};
    const int points = 501;
    for (int i = 0; i < points; ++i) {
        const double ti = T * i / (points - 1);
        const auto s = reference_pulses(ti, p);
        const auto m = modified_pulses(ti, p);
        t.add_row({ti * 1e9, s.g1 / kTwoPiMHz, s.g2 / kTwoPiMHz, s.g0 / kTwoPiMHz,
                   m.g1_mod / kTwoPiMHz, m.g2_mod / kTwoPiMHz, m.g_a / kTwoPiMHz});
    }
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);
    PlotSpec spec;
    spec.title = "coupling schedules";
    spec.xlabel = "t (ns)";
    spec.ylabel = "coupling/2pi (MHz)";
    for (std::size_t i = 1; i < t.columns.size(); ++i) spec.series.push_back({t.columns[i], "lines"});
    emit_plot_data(t, spec, cfg.out_dir, cfg.name);
    announce_table(cfg, path, t);
}

void run_efficiency(const ScenarioConfig& cfg) {
    const double T = cfg.duration_seconds();
    const PulseParams p{cfg.lambda0_rad(), T, cfg.sigma_ratio * T};
    SystemConfig sc = cfg.system_config();
    IntegratorSettings st;
    st.steps = resolved_steps(cfg, p, sc);
    const auto res = transfer_efficiency(p, sc, st);
    Table t;
    t.comments = provenance(cfg);
    t.columns = {"eps", "pop_m1", "residual_fiber_population", "dissipated_fraction",
                 "duration_ns", "steps"};
    t.add_row({res.epsilon, res.final_populations.front(), res.residual_fiber_population,
               res.dissipated_fraction, T * 1e9, static_cast<double>(res.steps_used)});
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);
    std::cout << cfg.name << ": eps = " << format_value(res.epsilon) << " (protocol "
              << protocol_name(sc.protocol) << ", T = " << format_value(T * 1e9)
              << " ns, steps = " << res.steps_used << ")\n";
}

void run_trajectory(const ScenarioConfig& cfg) {
    const double T = cfg.duration_seconds();
    std::vector<double> ratios = cfg.sigma_ratios;
    if (ratios.empty()) ratios = {cfg.sigma_ratio};

    struct Series {
        std::string label;
        std::vector<double> pop_m2;
    };
    std::vector<Series> series;
    std::vector<double> times;
    std::vector<double> pop_m1, pop_fiber, total;

    for (double ratio : ratios) {
        const PulseParams p{cfg.lambda0_rad(), T, ratio * T};
        for (Protocol proto : cfg.protocols) {
            SystemConfig sc = cfg.system_config();
            sc.protocol = proto;
            IntegratorSettings st;
            st.steps = resolved_steps(cfg, p, sc);
            st.record_stride = std::max(1, st.steps / 512);
            const auto res = transfer_efficiency(p, sc, st);
            const auto& traj = res.trajectory;
            if (times.empty()) {
                times = traj.times;
            }
            Series s;
            s.label = std::string("pop_m2_") + protocol_name(proto);
            if (ratios.size() > 1) s.label += "_s" + format_value(1.0 / ratio);
            s.pop_m2.reserve(traj.states.size());
            for (const auto& v : traj.states) s.pop_m2.push_back(std::norm(v.back()));
            series.push_back(std::move(s));
            if (ratios.size() == 1 && cfg.protocols.size() == 1) {
                for (const auto& v : traj.states) {
                    pop_m1.push_back(std::norm(v.front()));
                    double fib = 0.0;
                    for (std::size_t i = 1; i + 1 < v.size(); ++i) fib += std::norm(v[i]);
                    pop_fiber.push_back(fib);
                    total.push_back(norm_sq(v));
                }
            }
        }
    }

    Table t;
    t.comments = provenance(cfg);
    t.columns = {"t_ns"};
    for (const auto& s : series) t.columns.push_back(s.label);
    if (!pop_m1.empty()) {
        t.columns.push_back("pop_m1");
        t.columns.push_back("pop_fiber");
        t.columns.push_back("norm_sq");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row{times[i] * 1e9};
        for (const auto& s : series) row.push_back(s.pop_m2[i]);
        if (!pop_m1.empty()) {
            row.push_back(pop_m1[i]);
            row.push_back(pop_fiber[i]);
            row.push_back(total[i]);
        }
        t.add_row(std::move(row));
    }
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);
    PlotSpec spec;
    spec.title = "receiver population vs time";
    spec.xlabel = "t (ns)";
    spec.ylabel = "|m2|^2";
    for (const auto& s : series) spec.series.push_back({s.label, "lines"});
    emit_plot_data(t, spec, cfg.out_dir, cfg.name);
    announce_table(cfg, path, t);
    for (const auto& s : series)
        std::cout << "  " << s.label << "(T) = " << format_value(s.pop_m2.back()) << "\n";
}

Axis duration_axis(const ScenarioConfig& cfg) {
    const PulseParams proto{cfg.lambda0_rad(), 1.0, 0.5};
    const double t0 = characteristic_time(proto);
    return Axis{"duration", cfg.t_min_t0 * t0, cfg.t_max_t0 * t0, cfg.t_count, cfg.t_log};
}

void run_sweep_duration(const ScenarioConfig& cfg) {
    SweepBase base;
    base.lambda0 = cfg.lambda0_rad();
    base.sigma_ratio = cfg.sigma_ratio;
    base.config = cfg.system_config();
    base.settings.steps = cfg.steps;
    base.threads = cfg.threads;
    const auto sweep = sweep_duration(duration_axis(cfg), base, cfg.protocols);

    Table t;
    t.comments = provenance(cfg);
    t.columns = {"t_ns"};
    for (Protocol p : sweep.protocols) t.columns.push_back(std::string("eps_") + protocol_name(p));
    for (std::size_t i = 0; i < sweep.durations.size(); ++i) {
        std::vector<double> row{sweep.durations[i] * 1e9};
        for (std::size_t k = 0; k < sweep.protocols.size(); ++k) row.push_back(sweep.eps[k][i]);
        t.add_row(std::move(row));
    }
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);
    PlotSpec spec;
    spec.title = "transfer efficiency vs pulse duration";
    spec.xlabel = "T (ns)";
    spec.ylabel = "efficiency";
    for (std::size_t i = 1; i < t.columns.size(); ++i) spec.series.push_back({t.columns[i], "lines"});
    emit_plot_data(t, spec, cfg.out_dir, cfg.name);
    announce_table(cfg, path, t);
}

void run_sweep_duration_models(const ScenarioConfig& cfg) {
    const auto axis = duration_axis(cfg);
    const auto durations = axis.values();
    const SystemConfig base_sc = cfg.system_config();
    if (!(base_sc.delta_fsr > 0.0))
        throw ConfigError("delta_fsr_hz", 0, "model comparison sweep requires a mode spacing");

    struct Variant {
        const char* label;
        int n_pairs;
        Protocol protocol;
    };
    const std::vector<Variant> variants = {{"eps_single", 0, Protocol::AP},
                                           {"eps_n1", 1, Protocol::AP},
                                           {"eps_n9", 9, Protocol::AP},
                                           {"eps_effective", 0, Protocol::EFFECTIVE_3MODE}};
    std::vector<std::vector<double>> eps(variants.size(),
                                         std::vector<double>(durations.size(), 0.0));
    parallel_for(static_cast<int>(variants.size() * durations.size()), cfg.threads, [&](int job) {
        const std::size_t k = job / durations.size();
        const std::size_t i = job % durations.size();
        const double T = durations[i];
        const PulseParams p{cfg.lambda0_rad(), T, cfg.sigma_ratio * T};
        SystemConfig sc = base_sc;
        sc.n_pairs = variants[k].n_pairs;
        sc.protocol = variants[k].protocol;
        IntegratorSettings st;
        st.steps = cfg.steps > 0 ? cfg.steps : default_steps(p, sc);
        eps[k][i] = transfer_efficiency(p, sc, st).epsilon;
    });

    Table t;
    t.comments = provenance(cfg);
    t.columns = {"t_ns"};
    for (const auto& v : variants) t.columns.push_back(v.label);
    for (std::size_t i = 0; i < durations.size(); ++i) {
        std::vector<double> row{durations[i] * 1e9};
        for (std::size_t k = 0; k < variants.size(); ++k) row.push_back(eps[k][i]);
        t.add_row(std::move(row));
    }
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);
    PlotSpec spec;
    spec.title = "transfer efficiency vs pulse duration, fiber models";
    spec.xlabel = "T (ns)";
    spec.ylabel = "efficiency";
    for (std::size_t i = 1; i < t.columns.size(); ++i) spec.series.push_back({t.columns[i], "lines"});
    emit_plot_data(t, spec, cfg.out_dir, cfg.name);
    announce_table(cfg, path, t);
}

void run_sweep_2d(const ScenarioConfig& cfg) {
    SweepBase base;
    base.lambda0 = cfg.lambda0_rad();
    base.sigma_ratio = cfg.sigma_ratio;
    base.config = cfg.system_config();
    base.settings.steps = cfg.steps;
    base.threads = cfg.threads;
    const Axis t_axis{"duration", cfg.t_min_ns * 1e-9, cfg.t_max_ns * 1e-9, cfg.t_count, cfg.t_log};
    const Axis l_axis{"lambda0", 2.0 * M_PI * cfg.lambda0_min_hz, 2.0 * M_PI * cfg.lambda0_max_hz,
                      cfg.lambda0_count, cfg.lambda0_log};

    std::vector<Grid2D> grids;
    for (Protocol p : cfg.protocols) grids.push_back(sweep_2d(t_axis, l_axis, p, base));

    Table t;
    t.comments = provenance(cfg);
    t.columns = {"t_ns", "lambda0_mhz"};
    for (Protocol p : cfg.protocols) t.columns.push_back(std::string("eps_") + protocol_name(p));
    const auto& g0 = grids.front();
    for (std::size_t i_t = 0; i_t < g0.durations.size(); ++i_t)
        for (std::size_t i_l = 0; i_l < g0.strengths.size(); ++i_l) {
            std::vector<double> row{g0.durations[i_t] * 1e9, g0.strengths[i_l] / kTwoPiMHz};
            for (const auto& g : grids) row.push_back(g.at(i_t, i_l));
            t.add_row(std::move(row));
        }
    const std::string path = csv_path(cfg, cfg.name);
    write_csv(t, path);

    // One matrix file per protocol plus a heatmap description.
    std::vector<double> t_ns(g0.durations.size());
    for (std::size_t i = 0; i < t_ns.size(); ++i) t_ns[i] = g0.durations[i] * 1e9;
    std::vector<double> l_mhz(g0.strengths.size());
    for (std::size_t i = 0; i < l_mhz.size(); ++i) l_mhz[i] = g0.strengths[i] / kTwoPiMHz;
    std::ofstream plot((fs::path(cfg.out_dir) / (cfg.name + ".plot")).string());
    plot << "title = transfer efficiency over duration and peak strength\n";
    plot << "kind = heatmap\n";
    plot << "xlabel = lambda0/2pi (MHz)\nylabel = T (ns)\n";
    plot << "xscale = " << (cfg.lambda0_log ? "log" : "linear") << "\nyscale = linear\n";
    for (std::size_t k = 0; k < cfg.protocols.size(); ++k) {
        const std::string col = std::string("eps_") + protocol_name(cfg.protocols[k]);
        const std::string fname = cfg.name + "." + col + ".dat";
        write_matrix_data(t_ns, l_mhz, grids[k].eps, (fs::path(cfg.out_dir) / fname).string());
        plot << "matrix " << col << " = " << fname << "\n";
    }
    announce_table(cfg, path, t);
}

void run_sweep_length(const ScenarioConfig& cfg) {
    SweepBase base;
    base.lambda0 = cfg.lambda0_rad();
    base.sigma_ratio = cfg.sigma_ratio;
    base.config = cfg.system_config();
    base.settings.steps = cfg.steps;
    base.threads = cfg.threads;
    const Axis l_axis{"length", cfg.length_min_m, cfg.length_max_m, cfg.length_count, true};
    const double t_in_t0 = cfg.duration_t0 > 0.0 ? cfg.duration_t0 : 20.0;

    auto emit = [&cfg, &l_axis, t_in_t0](const SweepBase& b, const std::string& stem) {
        const auto sweep = sweep_fiber_length(l_axis, b, t_in_t0);
        Table t;
        t.comments = provenance(cfg);
        t.comments.push_back("sigma_ratio_used = " + format_value(b.sigma_ratio));
        t.columns = {"l_m", "ineff_n1", "ineff_n9", "ineff_analytic"};
        for (std::size_t i = 0; i < sweep.lengths_m.size(); ++i)
            t.add_row({sweep.lengths_m[i], sweep.ineff_n1[i], sweep.ineff_n9[i],
                       sweep.ineff_analytic[i]});
        const std::string path = csv_path(cfg, stem);
        write_csv(t, path);
        return std::make_pair(t, path);
    };

    auto [t, path] = emit(base, cfg.name);
    PlotSpec spec;
    spec.title = "transfer inefficiency vs fiber length";
    spec.xlabel = "fiber length (m)";
    spec.ylabel = "1 - efficiency";
    spec.logx = true;
    spec.logy = true;
    spec.series = {{"ineff_n1", "points"}, {"ineff_n9", "points"}, {"ineff_analytic", "lines"}};
    emit_plot_data(t, spec, cfg.out_dir, cfg.name);
    announce_table(cfg, path, t);

    if (cfg.emit_sigma_quarter) {
        SweepBase wide = base;
        wide.sigma_ratio = 0.25;
        auto [t4, path4] = emit(wide, cfg.name + "_sigma4");
        announce_table(cfg, path4, t4);
    }
}

}  // namespace

int run_scenario(const std::string& scenario, const CliOverrides& cli) {
    try {
        ScenarioConfig cfg = load_scenario(scenario, cli.config_path);
        if (cli.out_dir) cfg.out_dir = *cli.out_dir;
        if (cli.steps) cfg.steps = *cli.steps;
        if (cli.threads) cfg.threads = *cli.threads;
        cfg.check();
        fs::create_directories(cfg.out_dir);
        switch (cfg.mode) {
            case RunMode::Efficiency: run_efficiency(cfg); break;
            case RunMode::Pulses: run_pulses(cfg); break;
            case RunMode::Trajectory: run_trajectory(cfg); break;
            case RunMode::SweepDuration: run_sweep_duration(cfg); break;
            case RunMode::SweepDurationModels: run_sweep_duration_models(cfg); break;
            case RunMode::Sweep2D: run_sweep_2d(cfg); break;
            case RunMode::SweepLength: run_sweep_length(cfg); break;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
        if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qst
