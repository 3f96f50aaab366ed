#include <cmath>
#include <stdexcept>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "qst/dynamics.hpp"
#include "qst/integrator.hpp"

using namespace qst;

namespace {

const double kLambda0 = 2.0 * M_PI * 10e6;
const double kT = 250e-9;
const PulseParams kPulse{kLambda0, kT, kT / 8.0};

std::mt19937 rng(4242);

double random_t() {
    std::uniform_real_distribution<double> u(0.0, kT);
    return u(rng);
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd out(m.dim(), m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
    return out;
}

// Loss-free part of a builder output: drop the anti-Hermitian component.
CMatrix hermitian_part(const CMatrix& m) {
    CMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    return out;
}

CMatrix dissipative_part(const CMatrix& m) {  // D in M = H - i D
    CMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            out(r, c) = cdouble(0.0, 0.5) * (m(r, c) - std::conj(m(c, r)));
    return out;
}

}  // namespace

TEST_CASE("single-mode matrix entries and spectrum") {
    SystemConfig c;
    const CMatrix frozen = single_mode_matrix(3.0, 4.0, c);
    const Eigen::VectorXd evals =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_eigen(frozen)).eigenvalues();
    CHECK(evals(0) == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(evals(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(evals(2) == doctest::Approx(5.0).epsilon(1e-12));

    const CMatrix mid = single_mode_matrix(0.5 * kT, kPulse, c);
    CHECK(mid(0, 1).real() == doctest::Approx(kLambda0 / 2.0).epsilon(1e-12));
    CHECK(mid(1, 2).real() == doctest::Approx(kLambda0 / 2.0).epsilon(1e-12));

    c.gamma_fib = 2.0 * M_PI * 22e3;
    const CMatrix lossy = single_mode_matrix(0.5 * kT, kPulse, c);
    CHECK(lossy(1, 1).imag() == doctest::Approx(-2.0 * M_PI * 11e3).epsilon(1e-12));
    CHECK(lossy(0, 0) == cdouble(0.0, 0.0));
}

TEST_CASE("counter-diabatic matrix structure and finite-difference oracle") {
    const CMatrix mid = counter_diabatic_matrix(0.5 * kT, kPulse);
    CHECK(mid(0, 2).imag() == doctest::Approx(M_PI / (4.0 * kPulse.sigma)).epsilon(1e-10));
    CHECK(mid(2, 0).imag() == doctest::Approx(-M_PI / (4.0 * kPulse.sigma)).epsilon(1e-10));
    CHECK(std::abs(mid(0, 0)) == 0.0);
    CHECK(std::abs(mid(1, 1)) == 0.0);
    CHECK(std::abs(mid(0, 1)) == 0.0);

    CHECK(max_abs_diff(counter_diabatic_matrix_from(0.0), CMatrix(3)) == 0.0);

    // i * sum_k dA_k/dt |A_k><A_k| with the rows differentiated numerically
    const double scale = M_PI / (4.0 * kPulse.sigma);
    for (int i = 0; i < 25; ++i) {
        const double t = random_t();
        const double h = 1e-6 * kT;
        const CMatrix rp = adiabatic_basis(t + h, kPulse);
        const CMatrix rm = adiabatic_basis(t - h, kPulse);
        const CMatrix r = adiabatic_basis(t, kPulse);
        CMatrix fd(3);
        for (int k = 0; k < 3; ++k)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const cdouble da = (rp(k, a) - rm(k, a)) / (2.0 * h);
                    fd(a, b) += cdouble(0.0, 1.0) * da * std::conj(r(k, b));
                }
        CHECK(max_abs_diff(fd, counter_diabatic_matrix(t, kPulse)) <= 1e-6 * scale);
    }
}

TEST_CASE("multimode matrix matches the documented five-mode block") {
    SystemConfig c;
    c.n_pairs = 1;
    c.delta_fsr = 2.0 * M_PI * 10e6;
    c.gamma_fib = 2.0 * M_PI * 22e3;
    const double g1 = 1.1e6, g2 = 0.7e6;
    const CMatrix m = multimode_matrix(g1, g2, c);
    REQUIRE(m.dim() == 5);
    const cdouble loss(0.0, -0.5 * c.gamma_fib);
    CHECK(m(0, 1) == cdouble(g1));
    CHECK(m(0, 2) == cdouble(g1));
    CHECK(m(0, 3) == cdouble(g1));
    CHECK(std::abs(m(0, 4)) == 0.0);
    CHECK(m(1, 1) == cdouble(-c.delta_fsr) + loss);
    CHECK(m(2, 2) == loss);
    CHECK(m(3, 3) == cdouble(c.delta_fsr) + loss);
    CHECK(m(1, 4) == cdouble(-g2));
    CHECK(m(2, 4) == cdouble(g2));
    CHECK(m(3, 4) == cdouble(-g2));
    CHECK(m(4, 1) == cdouble(-g2));
    CHECK(m(4, 2) == cdouble(g2));
    CHECK(m(4, 3) == cdouble(-g2));

    SUBCASE("reduction to the single-mode matrix at n_pairs = 0") {
        SystemConfig c0 = c;
        c0.n_pairs = 0;
        CHECK(max_abs_diff(multimode_matrix(g1, g2, c0),
                           single_mode_matrix(g1, g2, c0)) == 0.0);
    }

    SUBCASE("alternating receiver couplings for nine pairs") {
        SystemConfig c9 = c;
        c9.n_pairs = 9;
        const CMatrix b = multimode_matrix(g1, g2, c9);
        REQUIRE(b.dim() == 21);
        for (int i = 1; i <= 19; ++i) {
            const int n = i - 10;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            CHECK(b(i, 20) == cdouble(sign * g2));
            CHECK(b(0, i) == cdouble(g1));
            CHECK(b(i, i).real() == doctest::Approx(n * c9.delta_fsr));
        }
    }
}

TEST_CASE("effective three-mode matrix and damping rates") {
    SystemConfig c;
    c.delta_fsr = 2.0 * M_PI * 10e6;
    c.gamma_fib = 2.0 * M_PI * 22e3;
    const double g = kLambda0 / 2.0;

    const auto r = effective_damping_rates(g, g, c);
    const double denom = 0.25 * c.gamma_fib * c.gamma_fib + c.delta_fsr * c.delta_fsr;
    CHECK(r.gamma12 == doctest::Approx(g * g * c.gamma_fib / denom).epsilon(1e-13));
    CHECK(r.gamma1 == doctest::Approx(r.gamma12).epsilon(1e-13));
    CHECK(r.gamma2 == doctest::Approx(r.gamma12).epsilon(1e-13));

    for (int i = 0; i < 20; ++i) {
        const double t = random_t();
        const auto s = reference_pulses(t, kPulse);
        const auto rates = effective_damping_rates(s.g1, s.g2, c);
        CHECK(rates.gamma12 * rates.gamma12 ==
              doctest::Approx(rates.gamma1 * rates.gamma2).epsilon(1e-12));
        const CMatrix m = effective_three_mode_matrix(s.g1, s.g2, c);
        CHECK(m(0, 0).imag() == doctest::Approx(-rates.gamma1));
        CHECK(m(2, 2).imag() == doctest::Approx(-rates.gamma2));
        CHECK(m(0, 2).imag() == doctest::Approx(rates.gamma12));
        // dissipative part stays positive semidefinite
        const Eigen::VectorXd dev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_eigen(dissipative_part(m)))
                .eigenvalues();
        CHECK(dev.minCoeff() >= -1e-12 * c.gamma_fib);
    }

    SUBCASE("lossless reduction") {
        SystemConfig c0 = c;
        c0.gamma_fib = 0.0;
        const auto s = reference_pulses(0.3 * kT, kPulse);
        CHECK(max_abs_diff(effective_three_mode_matrix(s.g1, s.g2, c0),
                           single_mode_matrix(s.g1, s.g2, c0)) == 0.0);
    }

    SUBCASE("elimination validity flag") {
        CHECK(!effective_elimination_valid(kLambda0 / std::sqrt(2.0), kLambda0 / std::sqrt(2.0), c));
        SystemConfig wide = c;
        wide.delta_fsr = 2.0 * M_PI * 1e9;
        CHECK(effective_elimination_valid(kLambda0 / std::sqrt(2.0), kLambda0 / std::sqrt(2.0), wide));
    }
}

TEST_CASE("builders are Hermitian apart from the loss structure") {
    SystemConfig c;
    c.gamma_fib = 2.0 * M_PI * 22e3;
    c.gamma_m = 2.0 * M_PI * 50.0;
    c.n_pairs = 2;
    c.delta_fsr = 2.0 * M_PI * 10e6;
    for (int i = 0; i < 100; ++i) {
        const double t = random_t();
        const auto s = reference_pulses(t, kPulse);
        const CMatrix m = multimode_matrix(s.g1, s.g2, c);
        // adding back i/2 times the loss diagonal must restore Hermiticity
        CMatrix h = m;
        for (int d = 0; d < h.dim(); ++d) h(d, d) -= cdouble(0.0, m(d, d).imag());
        CHECK(max_abs_diff(h, hermitian_part(h)) == 0.0);
        for (int d = 0; d < m.dim(); ++d) CHECK(m(d, d).imag() <= 0.0);
    }
}

TEST_CASE("adiabatic basis is orthogonal and diagonalizes the frozen matrix") {
    for (int i = 0; i < 40; ++i) {
        const double t = random_t();
        const CMatrix r = adiabatic_basis(t, kPulse);
        const CMatrix eye = multiply(r, transpose(r));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(std::abs(eye(a, b) - (a == b ? 1.0 : 0.0)) <= 1e-12);

        const auto s = reference_pulses(t, kPulse);
        SystemConfig lossless;
        const CMatrix d = multiply(r, multiply(single_mode_matrix(s.g1, s.g2, lossless),
                                               transpose(r)));
        CHECK(d(0, 0).real() == doctest::Approx(s.g0).epsilon(1e-12));
        CHECK(std::abs(d(1, 1)) <= 1e-12 * s.g0);
        CHECK(d(2, 2).real() == doctest::Approx(-s.g0).epsilon(1e-12));
        double off = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b) off = std::max(off, std::abs(d(a, b)));
        CHECK(off <= 1e-12 * s.g0);
    }

    SUBCASE("named angles") {
        const CMatrix mid = adiabatic_basis(M_PI / 4.0);
        CHECK(mid(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(mid(1, 1)) == 0.0);
        CHECK(mid(1, 2).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
        const CMatrix zero = adiabatic_basis(0.0);
        CHECK(zero(1, 0).real() == doctest::Approx(1.0));
        CHECK(std::abs(zero(1, 2)) == 0.0);
    }

    SUBCASE("dark row annihilated by the lossless matrix") {
        for (int i = 0; i < 20; ++i) {
            const double t = random_t();
            const auto s = reference_pulses(t, kPulse);
            SystemConfig lossless;
            const CMatrix m = single_mode_matrix(s.g1, s.g2, lossless);
            const CMatrix r = adiabatic_basis(t, kPulse);
            CVector dark{r(1, 0), r(1, 1), r(1, 2)};
            const CVector image = multiply(m, dark);
            CHECK(qst::norm(image) <= 1e-12 * s.g0);
        }
    }
}

TEST_CASE("adiabatic frame generator") {
    SystemConfig c;
    c.delta_fsr = 2.0 * M_PI * 10e6;

    SUBCASE("lossless structure") {
        const double t = 0.37 * kT;
        const CMatrix lam = adiabatic_frame_generator(t, kPulse, c);
        const auto s = reference_pulses(t, kPulse);
        const double k = mixing_angle_rate(t, kPulse) / std::sqrt(2.0);
        CHECK(std::abs(lam(1, 1)) <= 1e-12 * s.g0);
        CHECK(lam(0, 1).real() == doctest::Approx(k).epsilon(1e-10));
        CHECK(lam(1, 0).real() == doctest::Approx(-k).epsilon(1e-10));
        CHECK(lam(1, 2).real() == doctest::Approx(-k).epsilon(1e-10));
        CHECK(lam(2, 1).real() == doctest::Approx(k).epsilon(1e-10));
        CHECK(lam(0, 0).imag() == doctest::Approx(-s.g0).epsilon(1e-12));
        CHECK(lam(2, 2).imag() == doctest::Approx(s.g0).epsilon(1e-12));
        CHECK(std::abs(lam(0, 2)) <= 1e-12 * s.g0);
    }

    SUBCASE("eta value") {
        SystemConfig lossy = c;
        lossy.gamma_fib = 2.0 * M_PI * 22e3;
        const double g0 = kLambda0 / std::sqrt(2.0);
        const double expect = g0 * g0 * lossy.gamma_fib /
                              (0.5 * lossy.gamma_fib * lossy.gamma_fib +
                               2.0 * lossy.delta_fsr * lossy.delta_fsr);
        CHECK(eta_rate(g0, lossy) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(eta_rate(g0, c) == 0.0);
    }

    SUBCASE("frame propagation equals direct propagation when lossless") {
        // propagate in the rotating eigenbasis, map back, compare
        SystemConfig direct_cfg;
        direct_cfg.protocol = Protocol::AP;
        const Generator direct = make_generator(kPulse, direct_cfg);

        Generator frame;
        frame.dim = 3;
        frame.build = [&](double t, CMatrix& m) {
            const CMatrix lam = adiabatic_frame_generator(t, kPulse, c);
            // propagate() integrates dV/dt = -i M V, so hand it M = i Lambda
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) m(a, b) = cdouble(0.0, 1.0) * lam(a, b);
        };

        CVector v0{1.0, 0.0, 0.0};
        const int steps = default_steps(kPulse, direct_cfg);
        const CVector direct_final = rk4_propagate(direct, v0, kT, steps, 0).final_state();

        const CMatrix r0 = adiabatic_basis(0.0, kPulse);
        CVector a0 = multiply(r0, v0);
        const CVector a_final = rk4_propagate(frame, a0, kT, steps, 0).final_state();
        const CMatrix rt = adiabatic_basis(kT, kPulse);
        const CVector back = multiply(transpose(rt), a_final);

        for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - direct_final[i]) <= 1e-8);
    }
}

TEST_CASE("fiber zero mode") {
    const auto v = fiber_zero_mode(1.0, 1.0, 10.0);
    CHECK(v[0] == doctest::Approx(v[0]));
    CHECK(v[1] / v[0] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(v[2] == 0.0);
    CHECK(v[3] / v[0] == doctest::Approx(-0.2).epsilon(1e-13));
    CHECK(v[4] / v[0] == doctest::Approx(-1.0).epsilon(1e-13));

    const auto pure = fiber_zero_mode(0.0, 1.0, 10.0);
    CHECK(pure[0] == doctest::Approx(1.0));
    for (int i = 1; i < 5; ++i) CHECK(pure[i] == 0.0);

    CHECK_THROWS_AS(fiber_zero_mode(0.0, 0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(fiber_zero_mode(1.0, 1.0, 0.0), std::invalid_argument);

    // residual against the lossless three-fiber-mode matrix
    SystemConfig c;
    c.n_pairs = 1;
    c.delta_fsr = 2.0 * M_PI * 10e6;
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < 25; ++i) {
        const double g1 = u(rng) * 1e6, g2 = u(rng) * 1e6;
        const auto z = fiber_zero_mode(g1, g2, c.delta_fsr);
        CVector zc(z.begin(), z.end());
        const CMatrix m = multimode_matrix(g1, g2, c);
        double mnorm = 0.0;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) mnorm = std::max(mnorm, std::abs(m(a, b)));
        CHECK(qst::norm(multiply(m, zc)) <= 1e-12 * mnorm);
    }
}

TEST_CASE("pulse absorption reproduces the reshaped-coupling matrix") {
    SystemConfig lossless;
    // no rotation, no counter-diabatic term: both constructions equal the bare matrix
    const auto frozen = reference_pulses(0.5 * kT, kPulse);
    const auto still = modified_from(frozen, 0.0, 0.0);
    CHECK(max_abs_diff(gell_mann_combo(still.g1_mod, still.g2_mod, 0.0),
                       single_mode_matrix(frozen.g1, frozen.g2, lossless)) == 0.0);

    const auto mid = modified_pulses(0.5 * kT, kPulse);
    const CMatrix at_mid = cd_absorbed_matrix(0.5 * kT, kPulse, lossless);
    CHECK(at_mid(0, 1).real() == doctest::Approx(mid.g1_mod).epsilon(1e-10));
    CHECK(at_mid(1, 2).real() == doctest::Approx(mid.g2_mod).epsilon(1e-10));

    for (int i = 0; i < 60; ++i) {
        const double t = random_t();
        const auto m = modified_pulses(t, kPulse);
        const CMatrix got = cd_absorbed_matrix(t, kPulse, lossless);
        const CMatrix want = gell_mann_combo(m.g1_mod, m.g2_mod, 0.0);
        CHECK(max_abs_diff(got, want) <= 1e-8 * kLambda0);
    }

    SystemConfig lossy;
    lossy.gamma_fib = 1.0;
    CHECK_THROWS_AS(cd_absorbed_matrix(0.5 * kT, kPulse, lossy), std::invalid_argument);
}

TEST_CASE("generator factory selects the right model") {
    SystemConfig c;
    c.gamma_fib = 2.0 * M_PI * 22e3;

    c.protocol = Protocol::AP;
    const Generator ap = make_generator(kPulse, c);
    CHECK(ap.dim == 3);
    CMatrix m(3);
    ap.build(0.5 * kT, m);
    CHECK(m(0, 1).real() == doctest::Approx(kLambda0 / 2.0));

    c.protocol = Protocol::STAP_CD;
    const Generator cd = make_generator(kPulse, c);
    cd.build(0.5 * kT, m);
    CHECK(m(0, 2).imag() == doctest::Approx(M_PI / (4.0 * kPulse.sigma)).epsilon(1e-10));

    c.protocol = Protocol::STAP_MOD;
    const Generator mod = make_generator(kPulse, c);
    mod.build(0.5 * kT, m);
    CHECK(m(0, 1).real() ==
          doctest::Approx(std::hypot(kLambda0 / 2.0, M_PI / (4.0 * kPulse.sigma))).epsilon(1e-10));

    c.protocol = Protocol::EFFECTIVE_3MODE;
    CHECK_THROWS_AS(make_generator(kPulse, c), std::invalid_argument);  // needs delta_fsr
    c.delta_fsr = 2.0 * M_PI * 1e9;  // far detuned, no validity warning
    const Generator eff = make_generator(kPulse, c);
    eff.build(0.5 * kT, m);
    CHECK(m(0, 0).imag() < 0.0);
}
