#include "qst/pulses.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

// Below this fraction of lambda0 the envelope is treated as switched off and
// the counter-diabatic quantities are regularized to zero.
constexpr double kEnvelopeGuard = 1e-12;

struct EnvelopeDetail {
    double g0, s;
    double dg0, ds;
    double x;  // scaled time argument (t - T/2)/sigma
};

EnvelopeDetail envelope_detail(double t, const PulseParams& p) {
    EnvelopeDetail e;
    e.x = (t - 0.5 * p.duration) / p.sigma;
    const double sech = 1.0 / std::cosh(e.x);
    const double th = std::tanh(e.x);
    e.g0 = p.lambda0 / std::sqrt(2.0) * sech;
    e.s = 1.0 + th;
    e.dg0 = -e.g0 * th / p.sigma;
    e.ds = sech * sech / p.sigma;
    return e;
}

// d(g_a)/dt for the closed-form g_a = (pi / 4 sigma) sech^2(x).
double counter_diabatic_rate_derivative(const EnvelopeDetail& e, const PulseParams& p) {
    const double sech_sq = e.ds * p.sigma;
    return -0.5 * M_PI * sech_sq * std::tanh(e.x) / (p.sigma * p.sigma);
}

PulseSample reference_from_detail(const EnvelopeDetail& e) {
    const double angle = 0.25 * M_PI * e.s;
    const double sa = std::sin(angle);
    const double ca = std::cos(angle);
    const double dangle = 0.25 * M_PI * e.ds;
    PulseSample out;
    out.g0 = e.g0;
    out.g1 = e.g0 * sa;
    out.g2 = e.g0 * ca;
    out.dg1 = e.dg0 * sa + e.g0 * ca * dangle;
    out.dg2 = e.dg0 * ca - e.g0 * sa * dangle;
    return out;
}

}  // namespace

void validate(const PulseParams& p) {
    if (!(p.lambda0 > 0.0)) throw std::invalid_argument("pulse: lambda0 must be > 0");
    if (!(p.duration > 0.0)) throw std::invalid_argument("pulse: duration must be > 0");
    if (!(p.sigma > 0.0) || p.sigma > p.duration)
        throw std::invalid_argument("pulse: sigma must satisfy 0 < sigma <= duration");
}

double characteristic_time(const PulseParams& p) { return std::sqrt(2.0) * M_PI / p.lambda0; }

Envelope envelope(double t, const PulseParams& p) {
    const auto e = envelope_detail(t, p);
    return {e.g0, e.s};
}

PulseSample reference_pulses(double t, const PulseParams& p) {
    return reference_from_detail(envelope_detail(t, p));
}

double mixing_angle(double t, const PulseParams& p) {
    const auto s = reference_pulses(t, p);
    return std::atan2(s.g1, s.g2);
}

double mixing_angle_rate(double t, const PulseParams& p) {
    return 0.25 * M_PI * envelope_detail(t, p).ds;
}

double counter_diabatic_coupling(double t, const PulseParams& p) {
    const auto s = reference_pulses(t, p);
    if (s.g0 < kEnvelopeGuard * p.lambda0) return 0.0;
    return (s.dg1 * s.g2 - s.g1 * s.dg2) / (s.g0 * s.g0);
}

ModifiedPulseSample modified_from(const PulseSample& s, double g_a, double dg_a) {
    ModifiedPulseSample m;
    m.g_a = g_a;
    if (g_a == 0.0) {
        m.phi = 0.0;
        m.dphi = 0.0;
        m.g1_mod = s.g1;
        m.g2_mod = s.g2;
        return m;
    }
    m.phi = std::atan2(-g_a, s.g1);
    const double denom = s.g1 * s.g1 + g_a * g_a;
    m.dphi = -(dg_a * s.g1 - g_a * s.dg1) / denom;
    m.g1_mod = std::hypot(s.g1, g_a);
    m.g2_mod = s.g2 + m.dphi;
    return m;
}

ModifiedPulseSample modified_pulses(double t, const PulseParams& p) {
    const auto e = envelope_detail(t, p);
    const auto s = reference_from_detail(e);
    if (e.g0 < kEnvelopeGuard * p.lambda0) {
        return ModifiedPulseSample{s.g1, s.g2, 0.0, 0.0, 0.0};
    }
    const double g_a = (s.dg1 * s.g2 - s.g1 * s.dg2) / (s.g0 * s.g0);
    return modified_from(s, g_a, counter_diabatic_rate_derivative(e, p));
}

double effective_coupling(const PhysicalCouplingParams& q) {
    if (!(q.G > 0.0) || !(q.kappa > 0.0) || !(q.delta_fsr > 0.0))
        throw std::invalid_argument("effective_coupling: all parameters must be > 0");
    const double gamma_e = q.G * q.G / q.kappa;
    return std::sqrt(gamma_e * q.delta_fsr / (2.0 * M_PI));
}

}  // namespace qst
