#pragma once

#include <functional>
#include <vector>

#include "qst/matrix.hpp"
#include "qst/pulses.hpp"

namespace qst {

enum class Protocol {
    AP,              // reference pulses
    STAP_CD,         // reference pulses plus the counter-diabatic corner term
    STAP_MOD,        // reshaped pulses absorbing the counter-diabatic term
    EFFECTIVE_3MODE  // three-mode model with the neighbor fiber pair eliminated
};

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

// Speed of light in the fiber, m/s.
inline constexpr double kFiberLightSpeed = 2.0e8;

// Mode spacing delta_fsr = pi c / L for a fiber of length L (meters).
double fsr_from_length(double length_m);

struct SystemConfig {
    double gamma_fib = 0.0;        // fiber amplitude decay rate, rad/s
    double gamma_m = 0.0;          // mechanical damping rate, rad/s
    double delta_fsr = 0.0;        // fiber mode spacing, rad/s
    int n_pairs = 0;               // neighbor mode pairs; fiber modes = 2 n_pairs + 1
    Protocol protocol = Protocol::AP;
    double detuning_offset = 0.0;  // central-mode detuning from the working point, rad/s
};

void validate(const SystemConfig& c);

// ---- dynamics matrices -------------------------------------------------
// State ordering is (m1, f_{-N} ... f_{+N}, m2); the propagated equation is
// dV/dt = -i M(t) V.

// 3x3 single-fiber-mode matrix from explicit couplings.
void single_mode_matrix_into(CMatrix& m, double g1, double g2, double gamma_fib, double gamma_m);
CMatrix single_mode_matrix(double g1, double g2, const SystemConfig& c);
// Protocol-aware variant (AP -> reference pulses, STAP_MOD -> reshaped).
CMatrix single_mode_matrix(double t, const PulseParams& p, const SystemConfig& c);

// Counter-diabatic contribution: +/- i g_a in the (m1, m2) corners.
CMatrix counter_diabatic_matrix_from(double g_a);
CMatrix counter_diabatic_matrix(double t, const PulseParams& p);

// (2N+3)-dimensional multimode matrix. m1 couples with +g1 to every fiber
// mode; m2 couples with (-1)^n g2 to mode f_n; fiber diagonals carry
// n delta_fsr - i gamma_fib / 2.
void multimode_matrix_into(CMatrix& m, double g1, double g2, const SystemConfig& c);
CMatrix multimode_matrix(double g1, double g2, const SystemConfig& c);
CMatrix multimode_matrix(double t, const PulseParams& p, const SystemConfig& c);

// Effective three-mode model with the first neighbor pair integrated out.
struct DampingRates {
    double gamma12;  // cross damping, rad/s
    double gamma1, gamma2;
};
DampingRates effective_damping_rates(double g1, double g2, const SystemConfig& c);
// False when gamma_fib^2/4 + delta_fsr^2 <= 100 max(g1, g2)^2, i.e. the
// elimination premise is not comfortably satisfied.
bool effective_elimination_valid(double g1, double g2, const SystemConfig& c);
void effective_three_mode_matrix_into(CMatrix& m, double g1, double g2, const SystemConfig& c);
CMatrix effective_three_mode_matrix(double g1, double g2, const SystemConfig& c);
CMatrix effective_three_mode_matrix(double t, const PulseParams& p, const SystemConfig& c);

// ---- adiabatic frame ---------------------------------------------------

// Rows express (A+, A0, A-) in the (m1, f0, m2) basis; real orthogonal.
CMatrix adiabatic_basis(double theta);
CMatrix adiabatic_basis(double t, const PulseParams& p);

// Generator L for the adiabatic-frame amplitudes, dA/dt = L A, built by
// frame-transforming the effective three-mode matrix:
//   L = R' R^T - i R M_eff R^T.
CMatrix adiabatic_frame_generator(double t, const PulseParams& p, const SystemConfig& c);

// Dark-mode damping scale eta = g0^2 gamma_fib / (gamma_fib^2/2 + 2 delta_fsr^2).
double eta_rate(double g0, const SystemConfig& c);

// Unit-norm zero eigenvector of the lossless three-fiber-mode matrix,
// proportional to (g2, 2 g1 g2 / delta, 0, -2 g1 g2 / delta, -g1).
std::vector<double> fiber_zero_mode(double g1, double g2, double delta_fsr);

// ---- pulse-absorption identity ----------------------------------------

// T (M + M_cd) T^dag + i T' T^dag with the phase rotation T(phi) acting on
// the (f0, m2) block. Lossless construction; rejects gamma_fib != 0.
CMatrix cd_absorbed_matrix(double t, const PulseParams& p, const SystemConfig& c);

// g1m G1 + g2m G6 - gam G5 in terms of the standard SU(3) generators.
CMatrix gell_mann_combo(double g1m, double g2m, double gam);

// ---- generator ---------------------------------------------------------

struct Generator {
    int dim = 0;
    bool hermitian_when_lossless = true;
    std::function<void(double t, CMatrix& m)> build;
};

Generator make_generator(const PulseParams& p, const SystemConfig& c);

}  // namespace qst
