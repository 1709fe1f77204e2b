// Model layer: the physical parameter triple, the singular-time ladder, and
// the two wavepacket families with their complex-rotated evaluations.
//
// Closed-form anchors used below (all re-derivable by hand):
//   - t_l = (2l+1) pi / (32 hbar mu), so consecutive spacing is pi/(16 hbar mu)
//     and theta(t_l) = 8 hbar mu t_l = pi/4 + l pi/2 exactly.
//   - Coherent alpha=0 at z = e^{i pi/4}: z^2 = i, so Psi = pi^{-1/4} e^{-i/2}.
//   - conj_eval(y, theta) = conj(eval(y, -theta)); at y=1, theta=pi/4 that is
//     conj(pi^{-1/4} e^{+i/2}) = pi^{-1/4} e^{-i/2}.
//   - Coherent norm is 1 for every complex alpha (completing the square).
//   - Log-normal norm: substituting u = ln x turns the density into
//     N^{-1} e^{-u^2/(2a^2)} du per half line with N = 4 a sqrt(pi), giving
//     2 * sqrt(2 pi a^2)/N = sqrt(2)/2 independent of both a and hbar.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "hyperq/model/packet.hpp"
#include "hyperq/model/params.hpp"

using namespace hyperq;

// ---------------------------------------------------------------------------
// Parameters and the singular-time ladder
// ---------------------------------------------------------------------------

TEST_CASE("parameter validation rejects nonpositive hbar and non-finite rates") {
    PhysicalParams ok;
    CHECK_NOTHROW(ok.validate());
    PhysicalParams bad_h{0.0, 0.0, 1.0};
    CHECK_THROWS_AS(bad_h.validate(), ConfigError);
    PhysicalParams bad_w{1.0, std::nan(""), 1.0};
    CHECK_THROWS_AS(bad_w.validate(), ConfigError);
}

TEST_CASE("singular times: first value, exact spacing, parameter scaling") {
    PhysicalParams p;  // hbar = 1, mu = 1
    CHECK(singularity_time({0}, p) ==
          doctest::Approx(0.098174770424681039).epsilon(1e-15));  // pi/32

    for (int l = 0; l < 12; ++l) {
        double gap = singularity_time({l + 1}, p) - singularity_time({l}, p);
        CHECK(gap == doctest::Approx(pi / 16.0).epsilon(1e-13));
    }

    // Only the product hbar*mu enters.
    PhysicalParams p2{0.5, 0.0, 2.0};
    CHECK(singularity_time({3}, p2) ==
          doctest::Approx(singularity_time({3}, p)).epsilon(1e-15));

    // Negative mu mirrors the ladder in time.
    PhysicalParams pneg{1.0, 0.0, -1.0};
    CHECK(singularity_time({0}, pneg) ==
          doctest::Approx(-singularity_time({0}, p)).epsilon(1e-15));

    PhysicalParams pfree{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(singularity_time({0}, pfree), NoSingularity);
}

TEST_CASE("rotation angle hits pi/4 + l pi/2 at the singular times, unwrapped") {
    PhysicalParams p{2.0, 0.3, 0.7};  // arbitrary hbar, omega, mu
    for (int l = 0; l <= 6; ++l) {
        double tl = singularity_time({l}, p);
        CHECK(rotation_angle(tl, p) ==
              doctest::Approx(pi / 4.0 + l * pi / 2.0).epsilon(1e-13));
    }
    // Deliberately unwrapped: large l angles keep growing past 2 pi.
    CHECK(rotation_angle(singularity_time({10}, p), p) > 2.0 * pi);
}

TEST_CASE("dilation growth and the quadratic dispersion relation") {
    PhysicalParams p{1.0, 0.3, 0.0};
    CHECK(dilation_growth(0.5, p) == doctest::Approx(std::exp(0.6)).epsilon(1e-15));
    CHECK(dilation_growth(0.0, p) == 1.0);

    PhysicalParams q{2.0, 1.5, 0.25};
    for (double eps : {-3.0, 0.0, 0.7, 4.0})
        CHECK(energy_dispersion(eps, q) ==
              doctest::Approx(2.0 * 1.5 * eps - 4.0 * 2.0 * 0.25 * eps * eps)
                  .epsilon(1e-15));
}

// ---------------------------------------------------------------------------
// Packet evaluation at rotated arguments
// ---------------------------------------------------------------------------

TEST_CASE("coherent ground packet at real and rotated arguments") {
    auto w = Wavepacket::coherent({0.0, 0.0});
    const double pref = std::pow(pi, -0.25);

    // Real axis: pi^{-1/4} e^{-y^2/2} at hbar = 1.
    for (double y : {0.25, 1.0, 2.0}) {
        cplx v = eval_packet(w, {y, 0.0}, 1.0);
        CHECK(v.real() == doctest::Approx(pref * std::exp(-0.5 * y * y)).epsilon(1e-14));
        CHECK(v.imag() == 0.0);
    }

    // hbar scaling: (hbar pi)^{-1/4} e^{-y^2/(2 hbar)}.
    const double hb = 0.3;
    cplx vh = eval_packet(w, {0.8, 0.0}, hb);
    CHECK(vh.real() ==
          doctest::Approx(std::pow(hb * pi, -0.25) * std::exp(-0.64 / (2.0 * hb)))
              .epsilon(1e-14));

    // Quarter rotation: z = e^{i pi/4}, z^2 = i, so the exponent is purely
    // imaginary: pi^{-1/4} e^{-i/2}.
    cplx vr = eval_packet(w, {1.0, pi / 4.0}, 1.0);
    CHECK(vr.real() == doctest::Approx(pref * std::cos(0.5)).epsilon(1e-14));
    CHECK(vr.imag() == doctest::Approx(-pref * std::sin(0.5)).epsilon(1e-14));

    // Conjugated continuation at the same point gives the same value:
    // conj_eval(1, pi/4) = conj(eval(1, -pi/4)) = conj(pi^{-1/4} e^{+i/2}).
    cplx vc = conj_eval_packet(w, {1.0, pi / 4.0}, 1.0);
    CHECK(vc.real() == doctest::Approx(pref * std::cos(0.5)).epsilon(1e-14));
    CHECK(vc.imag() == doctest::Approx(-pref * std::sin(0.5)).epsilon(1e-14));
}

TEST_CASE("log-normal packet values on the real axis") {
    auto w = Wavepacket::lognormal(1.0);
    // At y = 1, ln y = 0, so only the normalization survives: (4 sqrt(pi))^{-1/2}.
    cplx v1 = eval_packet(w, {1.0, 0.0}, 1.0);
    CHECK(v1.real() ==
          doctest::Approx(1.0 / std::sqrt(4.0 * std::sqrt(pi))).epsilon(1e-14));
    CHECK(v1.imag() == 0.0);

    // General y, a: N^{-1/2} exp(-ln^2 y / 4a^2 - ln y / 2).
    for (double a : {0.5, 2.0})
        for (double y : {0.3, 1.7}) {
            auto wa = Wavepacket::lognormal(a);
            double lny = std::log(y);
            double want = std::exp(-lny * lny / (4.0 * a * a) - 0.5 * lny) /
                          std::sqrt(4.0 * a * std::sqrt(pi));
            CHECK(eval_packet(wa, {y, 0.0}, 1.0).real() ==
                  doctest::Approx(want).epsilon(1e-14));
        }

    // The form carries no hbar: values are identical across hbar.
    CHECK(eval_packet(w, {0.7, 0.0}, 1.0) == eval_packet(w, {0.7, 0.0}, 0.1));

    CHECK_THROWS_AS(Wavepacket::lognormal(0.0), ConfigError);
    CHECK_THROWS_AS(Wavepacket::lognormal(-1.0), ConfigError);
}

TEST_CASE("conjugated evaluation identity holds for all families and angles") {
    // conj_eval(w, y, theta) == conj(eval(w, y, -theta)), machine precision.
    std::vector<Wavepacket> packets{
        Wavepacket::coherent({0.0, 0.0}),
        Wavepacket::coherent({0.4, 0.0}),
        Wavepacket::coherent({-0.3, 0.8}),
        Wavepacket::lognormal(1.0),
        Wavepacket::lognormal(2.5),
    };
    for (size_t i = 0; i < packets.size(); ++i) {
        CAPTURE(i);
        for (double theta : {0.0, 0.4, pi / 4.0, 2.0, 9.0})
            for (double y : {0.2, 1.0, 3.0}) {
                cplx lhs = conj_eval_packet(packets[i], {y, theta}, 1.0);
                cplx rhs = std::conj(eval_packet(packets[i], {y, -theta}, 1.0));
                CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs));
            }
    }
}

TEST_CASE("the rotated product conj_eval * eval is real for the ground packet") {
    auto w = Wavepacket::coherent({0.0, 0.0});
    for (double theta : {0.1, 0.7, 2.0})
        for (double y : {0.3, 1.1, 2.4}) {
            cplx prod = conj_eval_packet(w, {y, theta}, 1.0) *
                        eval_packet(w, {y, -theta}, 1.0);
            // Closed form: (pi hbar)^{-1/2} e^{-y^2 cos(2 theta) / hbar}.
            double want = std::exp(-y * y * std::cos(2.0 * theta)) / std::sqrt(pi);
            CHECK(std::abs(prod.imag()) <= 1e-14 * std::abs(prod));
            CHECK(prod.real() == doctest::Approx(want).epsilon(1e-13));
        }

    // Same product at hbar != 1 keeps the /hbar in the exponent.
    const double hb = 0.5;
    cplx p2 = conj_eval_packet(w, {1.2, 0.3}, hb) * eval_packet(w, {1.2, -0.3}, hb);
    double want2 = std::exp(-1.44 * std::cos(0.6) / hb) / std::sqrt(pi * hb);
    CHECK(p2.real() == doctest::Approx(want2).epsilon(1e-13));
}

TEST_CASE("real-axis evaluation is bitwise even for even packets") {
    for (auto w : {Wavepacket::coherent({0.0, 0.0}), Wavepacket::lognormal(1.3)}) {
        for (double x : {0.17, 1.0, 2.9}) {
            cplx plus = eval_packet_real(w, x, 1.0);
            cplx minus = eval_packet_real(w, -x, 1.0);
            CHECK(plus.real() == minus.real());
            CHECK(plus.imag() == minus.imag());
        }
    }
    // A displaced coherent packet is NOT even.
    auto wd = Wavepacket::coherent({0.6, 0.0});
    CHECK(std::abs(eval_packet_real(wd, 1.0, 1.0)) !=
          doctest::Approx(std::abs(eval_packet_real(wd, -1.0, 1.0))).epsilon(1e-6));
}

TEST_CASE("analytic derivative matches central differences") {
    const double h = 1e-6;
    std::vector<Wavepacket> packets{
        Wavepacket::coherent({0.0, 0.0}),
        Wavepacket::coherent({0.4, -0.2}),
        Wavepacket::lognormal(1.0),
    };
    for (size_t i = 0; i < packets.size(); ++i) {
        CAPTURE(i);
        for (double x : {0.7, 1.3, -0.9}) {
            cplx num = (eval_packet_real(packets[i], x + h, 1.0) -
                        eval_packet_real(packets[i], x - h, 1.0)) /
                       (2.0 * h);
            cplx ana = packet_derivative(packets[i], x, 1.0);
            CHECK(std::abs(num - ana) <= 1e-8 * std::max(1.0, std::abs(ana)));
        }
    }
    // Coherent family identity: Psi'/Psi = (sqrt(2) alpha - x)/hbar.
    auto wa = Wavepacket::coherent({0.4, -0.2});
    const double hb = 0.7;
    for (double x : {0.5, -1.1}) {
        cplx ratio = packet_derivative(wa, x, hb) / eval_packet_real(wa, x, hb);
        cplx want = (std::sqrt(2.0) * cplx(0.4, -0.2) - x) / hb;
        CHECK(std::abs(ratio - want) <= 1e-12 * std::abs(want));
    }
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

TEST_CASE("coherent packets are unit-normalized for a grid of amplitudes") {
    const std::vector<cplx> alphas{
        {0.0, 0.0},  {0.4, 0.0},  {-0.4, 0.0}, {0.0, 0.7},   {0.4, 0.3},
        {-1.0, 1.0}, {2.0, 0.0},  {-1.5, 0.2}, {0.1, -0.9},  {0.57, 0.57},
    };
    for (double hb : {1.0, 0.5}) {
        for (size_t i = 0; i < alphas.size(); ++i) {
            CAPTURE(hb);
            CAPTURE(i);
            double n = packet_norm(Wavepacket::coherent(alphas[i]), hb);
            CHECK(std::abs(n - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("log-normal norm is sqrt(2)/2, independent of width and hbar") {
    const double want = 0.70710678118654752;  // sqrt(2)/2
    for (double a : {0.5, 1.0, 2.0, 5.0})
        for (double hb : {0.3, 1.0, 2.0}) {
            CAPTURE(a);
            CAPTURE(hb);
            CHECK(std::abs(packet_norm(Wavepacket::lognormal(a), hb) - want) < 1e-10);
        }
}
