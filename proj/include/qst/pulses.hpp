#pragma once

namespace qst {

// Drive schedule parameters. All rates are angular (rad/s), times in seconds.
// lambda0 sets the peak coupling scale, duration the transfer window [0, T],
// sigma the semi-width of the sech envelope.
struct PulseParams {
    double lambda0 = 0.0;
    double duration = 0.0;
    double sigma = 0.0;
};

void validate(const PulseParams& p);

// Characteristic adiabatic time T0 = sqrt(2) pi / lambda0.
double characteristic_time(const PulseParams& p);

struct Envelope {
    double g0;  // common envelope, rad/s
    double s;   // switching function, dimensionless, in [0, 2]
};

// g0(t) = lambda0/sqrt(2) * sech((t - T/2)/sigma),
// s(t)  = 1 + tanh((t - T/2)/sigma)
Envelope envelope(double t, const PulseParams& p);

// Reference coupling schedule and its exact time derivatives:
// g1 = g0 sin(pi s / 4), g2 = g0 cos(pi s / 4).
struct PulseSample {
    double g1, g2;    // rad/s
    double dg1, dg2;  // rad/s^2
    double g0;        // rad/s
};

PulseSample reference_pulses(double t, const PulseParams& p);

// theta = atan2(g1, g2), in [0, pi/2]; equals pi s / 4 for this schedule.
double mixing_angle(double t, const PulseParams& p);

// Closed form of d(theta)/dt: (pi / 4 sigma) sech^2((t - T/2)/sigma).
double mixing_angle_rate(double t, const PulseParams& p);

// Auxiliary counter-diabatic coupling g_a = (g1' g2 - g1 g2') / g0^2.
// Returns 0 below the envelope guard (g0 < 1e-12 lambda0).
double counter_diabatic_coupling(double t, const PulseParams& p);

// Reshaped schedule that absorbs the counter-diabatic term:
// phi = atan(-g_a / g1), g1_mod = sqrt(g1^2 + g_a^2), g2_mod = g2 + phi'.
struct ModifiedPulseSample {
    double g1_mod, g2_mod;  // rad/s
    double g_a;             // rad/s
    double phi;             // rad
    double dphi;            // rad/s
};

ModifiedPulseSample modified_pulses(double t, const PulseParams& p);

// Pure combiner used by modified_pulses; exposed so frozen-coupling cases
// (e.g. g_a = 0) can be exercised directly.
ModifiedPulseSample modified_from(const PulseSample& s, double g_a, double dg_a);

// Conversion from cavity-level quantities to the effective coupling
// g = sqrt(gamma_e * delta_fsr / 2 pi) with gamma_e = G^2 / kappa.
struct PhysicalCouplingParams {
    double G;          // optomechanical coupling, rad/s
    double kappa;      // cavity decay, rad/s
    double delta_fsr;  // free spectral range, rad/s
};

double effective_coupling(const PhysicalCouplingParams& q);

}  // namespace qst
