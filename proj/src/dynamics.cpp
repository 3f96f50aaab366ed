#include "qst/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace qst {

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::AP: return "ap";
        case Protocol::STAP_CD: return "stap_cd";
        case Protocol::STAP_MOD: return "stap_mod";
        case Protocol::EFFECTIVE_3MODE: return "effective";
    }
    return "?";
}

Protocol protocol_from_name(const std::string& name) {
    if (name == "ap") return Protocol::AP;
    if (name == "stap_cd") return Protocol::STAP_CD;
    if (name == "stap_mod") return Protocol::STAP_MOD;
    if (name == "effective") return Protocol::EFFECTIVE_3MODE;
    throw std::invalid_argument("unknown protocol '" + name +
                                "' (expected ap, stap_cd, stap_mod or effective)");
}

double fsr_from_length(double length_m) {
    if (!(length_m > 0.0)) throw std::invalid_argument("fiber length must be > 0");
    return M_PI * kFiberLightSpeed / length_m;
}

void validate(const SystemConfig& c) {
    if (c.gamma_fib < 0.0 || c.gamma_m < 0.0)
        throw std::invalid_argument("config: damping rates must be >= 0");
    if (c.n_pairs < 0) throw std::invalid_argument("config: n_pairs must be >= 0");
    if (c.delta_fsr < 0.0) throw std::invalid_argument("config: delta_fsr must be >= 0");
    if (c.n_pairs > 0 && !(c.delta_fsr > 0.0))
        throw std::invalid_argument("config: multimode fiber requires delta_fsr > 0");
    if (c.protocol == Protocol::EFFECTIVE_3MODE && !(c.delta_fsr > 0.0))
        throw std::invalid_argument("config: effective model requires delta_fsr > 0");
}

void single_mode_matrix_into(CMatrix& m, double g1, double g2, double gamma_fib, double gamma_m) {
    m.set_zero();
    m(0, 0) = cdouble(0.0, -0.5 * gamma_m);
    m(2, 2) = cdouble(0.0, -0.5 * gamma_m);
    m(1, 1) = cdouble(0.0, -0.5 * gamma_fib);
    m(0, 1) = m(1, 0) = g1;
    m(1, 2) = m(2, 1) = g2;
}

CMatrix single_mode_matrix(double g1, double g2, const SystemConfig& c) {
    CMatrix m(3);
    single_mode_matrix_into(m, g1, g2, c.gamma_fib, c.gamma_m);
    return m;
}

CMatrix single_mode_matrix(double t, const PulseParams& p, const SystemConfig& c) {
    CMatrix m(3);
    if (c.protocol == Protocol::STAP_MOD) {
        const auto s = modified_pulses(t, p);
        single_mode_matrix_into(m, s.g1_mod, s.g2_mod, c.gamma_fib, c.gamma_m);
    } else {
        const auto s = reference_pulses(t, p);
        single_mode_matrix_into(m, s.g1, s.g2, c.gamma_fib, c.gamma_m);
    }
    return m;
}

CMatrix counter_diabatic_matrix_from(double g_a) {
    CMatrix m(3);
    m(0, 2) = cdouble(0.0, g_a);
    m(2, 0) = cdouble(0.0, -g_a);
    return m;
}

CMatrix counter_diabatic_matrix(double t, const PulseParams& p) {
    return counter_diabatic_matrix_from(counter_diabatic_coupling(t, p));
}

void multimode_matrix_into(CMatrix& m, double g1, double g2, const SystemConfig& c) {
    const int dim = 2 * c.n_pairs + 3;
    assert(m.dim() == dim);
    m.set_zero();
    const cdouble mech_loss(0.0, -0.5 * c.gamma_m);
    m(0, 0) = mech_loss;
    m(dim - 1, dim - 1) = mech_loss;
    for (int i = 1; i <= 2 * c.n_pairs + 1; ++i) {
        const int n = i - 1 - c.n_pairs;
        m(i, i) = cdouble(c.detuning_offset + n * c.delta_fsr, -0.5 * c.gamma_fib);
        m(0, i) = m(i, 0) = g1;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        m(i, dim - 1) = m(dim - 1, i) = sign * g2;
    }
}

CMatrix multimode_matrix(double g1, double g2, const SystemConfig& c) {
    CMatrix m(2 * c.n_pairs + 3);
    multimode_matrix_into(m, g1, g2, c);
    return m;
}

CMatrix multimode_matrix(double t, const PulseParams& p, const SystemConfig& c) {
    CMatrix m(2 * c.n_pairs + 3);
    if (c.protocol == Protocol::STAP_MOD) {
        const auto s = modified_pulses(t, p);
        multimode_matrix_into(m, s.g1_mod, s.g2_mod, c);
    } else {
        const auto s = reference_pulses(t, p);
        multimode_matrix_into(m, s.g1, s.g2, c);
    }
    return m;
}

DampingRates effective_damping_rates(double g1, double g2, const SystemConfig& c) {
    if (c.gamma_fib == 0.0) return {0.0, 0.0, 0.0};
    const double denom = 0.25 * c.gamma_fib * c.gamma_fib + c.delta_fsr * c.delta_fsr;
    return {g1 * g2 * c.gamma_fib / denom, g1 * g1 * c.gamma_fib / denom,
            g2 * g2 * c.gamma_fib / denom};
}

bool effective_elimination_valid(double g1, double g2, const SystemConfig& c) {
    const double denom = 0.25 * c.gamma_fib * c.gamma_fib + c.delta_fsr * c.delta_fsr;
    const double gmax = std::max(std::abs(g1), std::abs(g2));
    return denom > 100.0 * gmax * gmax;
}

void effective_three_mode_matrix_into(CMatrix& m, double g1, double g2, const SystemConfig& c) {
    assert(m.dim() == 3);
    const auto r = effective_damping_rates(g1, g2, c);
    m.set_zero();
    m(0, 0) = cdouble(0.0, -(r.gamma1 + 0.5 * c.gamma_m));
    m(2, 2) = cdouble(0.0, -(r.gamma2 + 0.5 * c.gamma_m));
    m(1, 1) = cdouble(0.0, -0.5 * c.gamma_fib);
    m(0, 1) = m(1, 0) = g1;
    m(1, 2) = m(2, 1) = g2;
    m(0, 2) = m(2, 0) = cdouble(0.0, r.gamma12);
}

CMatrix effective_three_mode_matrix(double g1, double g2, const SystemConfig& c) {
    CMatrix m(3);
    effective_three_mode_matrix_into(m, g1, g2, c);
    return m;
}

CMatrix effective_three_mode_matrix(double t, const PulseParams& p, const SystemConfig& c) {
    const auto s = reference_pulses(t, p);
    return effective_three_mode_matrix(s.g1, s.g2, c);
}

CMatrix adiabatic_basis(double theta) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix m(3);
    m(0, 0) = r * st;
    m(0, 1) = r;
    m(0, 2) = r * ct;
    m(1, 0) = ct;
    m(1, 1) = 0.0;
    m(1, 2) = -st;
    m(2, 0) = r * st;
    m(2, 1) = -r;
    m(2, 2) = r * ct;
    return m;
}

CMatrix adiabatic_basis(double t, const PulseParams& p) {
    return adiabatic_basis(mixing_angle(t, p));
}

CMatrix adiabatic_frame_generator(double t, const PulseParams& p, const SystemConfig& c) {
    const auto s = reference_pulses(t, p);
    const double theta = std::atan2(s.g1, s.g2);
    const double theta_dot = mixing_angle_rate(t, p);
    const CMatrix r = adiabatic_basis(theta);
    CMatrix meff(3);
    effective_three_mode_matrix_into(meff, s.g1, s.g2, c);
    CMatrix lam = scaled(multiply(r, multiply(meff, transpose(r))), cdouble(0.0, -1.0));
    // R' R^T has the fixed antisymmetric pattern set by theta_dot.
    const double k = theta_dot / std::sqrt(2.0);
    lam(0, 1) += k;
    lam(1, 0) -= k;
    lam(1, 2) -= k;
    lam(2, 1) += k;
    return lam;
}

double eta_rate(double g0, const SystemConfig& c) {
    if (c.gamma_fib == 0.0) return 0.0;
    const double denom = 0.5 * c.gamma_fib * c.gamma_fib + 2.0 * c.delta_fsr * c.delta_fsr;
    return g0 * g0 * c.gamma_fib / denom;
}

std::vector<double> fiber_zero_mode(double g1, double g2, double delta_fsr) {
    if (!(delta_fsr > 0.0)) throw std::invalid_argument("fiber_zero_mode: delta_fsr must be > 0");
    if (g1 == 0.0 && g2 == 0.0)
        throw std::invalid_argument("fiber_zero_mode: g1 and g2 cannot both vanish");
    const double b = 2.0 * g1 * g2 / delta_fsr;
    std::vector<double> v{g2, b, 0.0, -b, -g1};
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    return v;
}

namespace {

// Phase rotation on the (f0, m2) block used to absorb the counter-diabatic
// term into the pulse shapes.
CMatrix pulse_rotation(double phi) {
    CMatrix u(3);
    u(0, 0) = 1.0;
    u(1, 1) = u(2, 2) = std::cos(phi);
    u(1, 2) = u(2, 1) = cdouble(0.0, -std::sin(phi));
    return u;
}

CMatrix pulse_rotation_dphi(double phi) {
    CMatrix u(3);
    u(1, 1) = u(2, 2) = -std::sin(phi);
    u(1, 2) = u(2, 1) = cdouble(0.0, -std::cos(phi));
    return u;
}

}  // namespace

CMatrix cd_absorbed_matrix(double t, const PulseParams& p, const SystemConfig& c) {
    if (c.gamma_fib != 0.0)
        throw std::invalid_argument("cd_absorbed_matrix: defined for a lossless fiber only");
    const auto s = reference_pulses(t, p);
    const auto mod = modified_pulses(t, p);
    CMatrix total(3);
    single_mode_matrix_into(total, s.g1, s.g2, 0.0, 0.0);
    total = sum(total, counter_diabatic_matrix_from(mod.g_a));
    const CMatrix u = pulse_rotation(mod.phi);
    const CMatrix udag = adjoint(u);
    CMatrix out = multiply(u, multiply(total, udag));
    const CMatrix du = scaled(pulse_rotation_dphi(mod.phi), mod.dphi);
    out = sum(out, scaled(multiply(du, udag), cdouble(0.0, 1.0)));
    return out;
}

CMatrix gell_mann_combo(double g1m, double g2m, double gam) {
    CMatrix m(3);
    m(0, 1) = m(1, 0) = g1m;
    m(1, 2) = m(2, 1) = g2m;
    m(0, 2) = cdouble(0.0, gam);
    m(2, 0) = cdouble(0.0, -gam);
    return m;
}

Generator make_generator(const PulseParams& p, const SystemConfig& c) {
    validate(p);
    validate(c);
    Generator gen;
    gen.hermitian_when_lossless = true;
    switch (c.protocol) {
        case Protocol::AP:
            gen.dim = 2 * c.n_pairs + 3;
            gen.build = [p, c](double t, CMatrix& m) {
                const auto s = reference_pulses(t, p);
                multimode_matrix_into(m, s.g1, s.g2, c);
            };
            break;
        case Protocol::STAP_MOD:
            gen.dim = 2 * c.n_pairs + 3;
            gen.build = [p, c](double t, CMatrix& m) {
                const auto s = modified_pulses(t, p);
                multimode_matrix_into(m, s.g1_mod, s.g2_mod, c);
            };
            break;
        case Protocol::STAP_CD:
            gen.dim = 2 * c.n_pairs + 3;
            gen.build = [p, c, dim = 2 * c.n_pairs + 3](double t, CMatrix& m) {
                const auto s = reference_pulses(t, p);
                multimode_matrix_into(m, s.g1, s.g2, c);
                const double g_a = counter_diabatic_coupling(t, p);
                m(0, dim - 1) += cdouble(0.0, g_a);
                m(dim - 1, 0) += cdouble(0.0, -g_a);
            };
            break;
        case Protocol::EFFECTIVE_3MODE: {
            gen.dim = 3;
            const double peak = p.lambda0 / std::sqrt(2.0);
            static std::atomic<bool> warned{false};
            if (!effective_elimination_valid(peak, peak, c) && !warned.exchange(true)) {
                std::cerr << "warning: effective three-mode model used where "
                             "gamma_fib^2/4 + delta_fsr^2 is not >> peak coupling^2\n";
            }
            gen.build = [p, c](double t, CMatrix& m) {
                const auto s = reference_pulses(t, p);
                effective_three_mode_matrix_into(m, s.g1, s.g2, c);
            };
            break;
        }
    }
    return gen;
}

}  // namespace qst
